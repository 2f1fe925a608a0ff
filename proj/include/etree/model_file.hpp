#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etree/events.hpp"
#include "etree/prob.hpp"
#include "etree/space.hpp"
#include "etree/transform.hpp"
#include "etree/saifi.hpp"

namespace etree {

inline constexpr std::string_view kModelSchema = "etree-model/1";

enum class Mode { Exact, Float };

inline std::string_view to_string(Mode mode) {
  return mode == Mode::Exact ? "exact" : "float";
}

struct StateField {
  std::string name;
  std::string prob_text;  // decimal or "n/d"; exact mode parses it exactly
};

struct ComponentField {
  std::string id;
  std::vector<StateField> states;  // empty when rate-driven
  std::optional<double> rate;
};

struct GroupField {
  std::string name;
  std::uint64_t count = 0;
  std::string partition;
};

/// Parsed model file, the batch front end's unit of input.
struct ModelFile {
  Mode mode = Mode::Float;
  std::optional<double> time;
  std::vector<ComponentField> components;
  std::vector<ReductionSpec> reductions;
  std::vector<std::pair<std::string, PartitionSpec>> partitions;
  std::vector<GroupField> customer_groups;
};

struct ParseIssue {
  ErrorCode code = ErrorCode::SchemaError;
  std::string pointer;  // JSON pointer into the document
  std::string message;

  std::string to_string() const {
    return std::string(etree::to_string(code)) + " at " +
           (pointer.empty() ? "/" : pointer) + ": " + message;
  }
};

struct ParseResult {
  std::optional<ModelFile> model;
  std::vector<ParseIssue> issues;
  bool ok() const { return model.has_value() && issues.empty(); }
};

/// Parses and fully validates a model file: JSON syntax, schema shape, and
/// the semantic checks (space validity in the declared mode, reduction and
/// partition index arithmetic, group references). All problems are
/// collected with JSON-pointer locations instead of stopping at the first.
ParseResult parse_model(std::string_view text);

/// Outcome spaces for the declared components. Rate-driven components get
/// up/down states from the exponential lifetime model; the exact backend
/// refuses them since e^x has no exact representation.
template <ProbabilityValue N>
std::vector<OutcomeSpace<N>> build_spaces(const ModelFile& file, double time) {
  std::vector<OutcomeSpace<N>> spaces;
  spaces.reserve(file.components.size());
  for (const ComponentField& component : file.components) {
    OutcomeSpace<N> space;
    space.component = ComponentId{component.id};
    if (component.rate.has_value()) {
      if constexpr (std::same_as<N, Rational>) {
        raise(ErrorCode::SemanticError,
              "exact mode cannot evaluate rate-driven component '" +
                  component.id + "'; use float mode");
      } else {
        space.states.push_back(
            {std::string(kUpState), exp_survival(*component.rate, time)});
        space.states.push_back(
            {std::string(kDownState), exp_cdf(*component.rate, time)});
      }
    } else {
      for (const StateField& state : component.states)
        space.states.push_back(
            {state.name, probability_from_text<N>(state.prob_text)});
    }
    spaces.push_back(std::move(space));
  }
  return spaces;
}

/// Per-component event lists in declaration order, the tree's levels.
std::vector<std::vector<AtomicEvent>> component_levels(const ModelFile& file);

/// Complete-tree scenario list for the file's components.
std::vector<Path> complete_paths(const ModelFile& file);

/// Customer groups resolved against the named partitions.
std::vector<CustomerGroup> resolve_groups(const ModelFile& file);

}  // namespace etree
