#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "etree/events.hpp"
#include "etree/space.hpp"

namespace etree {

/// One complete-cylinder deletion: the paths at `indices` collapse into the
/// single conditional-event path `conditional`.
struct ReductionSpec {
  std::vector<std::size_t> indices;  // strictly descending
  Path conditional;
};

/// Path selection by index; order is preserved and duplicates are allowed.
struct PartitionSpec {
  std::vector<std::size_t> indices;
};

inline void validate_reduction(const ReductionSpec& spec, std::size_t path_count) {
  if (spec.indices.empty())
    raise(ErrorCode::EmptyIndexList, "reduction needs at least one path index");
  for (std::size_t i = 0; i + 1 < spec.indices.size(); ++i)
    if (!(spec.indices[i] > spec.indices[i + 1]))
      raise(ErrorCode::NotDescending,
            "reduction indices must be strictly descending");
  for (std::size_t index : spec.indices)
    if (index >= path_count)
      raise(ErrorCode::IndexOutOfRange,
            "path index " + std::to_string(index) + " exceeds path count " +
                std::to_string(path_count));
}

/// Intersection of a path's events; the empty path denotes the full space.
template <ProbabilityValue N>
ConcreteEvent path_event(const WorldModel<N>& model, const Path& path) {
  ConcreteEvent acc = model.full_event();
  for (const AtomicEvent& event : path) acc = acc & model.resolve(event);
  return acc;
}

/// Deletes the paths at all but the last (smallest) index and replaces the
/// survivor at that index with the conditional-event path. Descending order
/// keeps every touched position stable while earlier deletions happen.
inline std::vector<Path> reduce(std::vector<Path> paths, const ReductionSpec& spec) {
  validate_reduction(spec, paths.size());
  for (std::size_t i = 0; i + 1 < spec.indices.size(); ++i)
    paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(spec.indices[i]));
  paths[spec.indices.back()] = spec.conditional;
  return paths;
}

/// Applies reductions sequentially; each spec addresses the list as left by
/// the previous one.
inline std::vector<Path> reduce_many(std::vector<Path> paths,
                                     std::span<const ReductionSpec> specs) {
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      paths = reduce(std::move(paths), specs[i]);
    } catch (const Error& error) {
      raise(error.code(),
            "reduction[" + std::to_string(i) + "]: " + error.what());
    }
  }
  return paths;
}

/// Picks the paths named by the spec, in spec order, duplicates included.
inline std::vector<Path> partition(const PartitionSpec& spec,
                                   std::span<const Path> paths) {
  std::vector<Path> out;
  out.reserve(spec.indices.size());
  for (std::size_t index : spec.indices) {
    if (index >= paths.size())
      raise(ErrorCode::IndexOutOfRange,
            "partition index " + std::to_string(index) +
                " exceeds path count " + std::to_string(paths.size()));
    out.push_back(paths[index]);
  }
  return out;
}

}  // namespace etree
