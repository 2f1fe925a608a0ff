#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "etree/events.hpp"
#include "etree/space.hpp"

namespace etree {

/// Recursive event-tree value: a leaf event, a fan-out of alternatives, or
/// a labelled branch over sub-trees. Child order is irrelevant for
/// probability but fixes the path numbering, so it is preserved everywhere.
class EventTree {
 public:
  enum class Kind { Atomic, Node, Branch };

  static EventTree atomic(AtomicEvent event) {
    return EventTree(AtomicValue{std::move(event)});
  }
  static EventTree node(std::vector<EventTree> children) {
    return EventTree(NodeValue{std::move(children)});
  }
  static EventTree branch(AtomicEvent label, std::vector<EventTree> children) {
    return EventTree(BranchValue{std::move(label), std::move(children)});
  }

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_atomic() const { return kind() == Kind::Atomic; }
  bool is_node() const { return kind() == Kind::Node; }
  bool is_branch() const { return kind() == Kind::Branch; }

  /// The leaf's event (Atomic only).
  const AtomicEvent& event() const { return std::get<AtomicValue>(value_).event; }
  /// The branch's label event (Branch only).
  const AtomicEvent& label() const { return std::get<BranchValue>(value_).label; }

  const std::vector<EventTree>& children() const {
    if (is_node()) return std::get<NodeValue>(value_).children;
    return std::get<BranchValue>(value_).children;
  }

 private:
  struct AtomicValue {
    AtomicEvent event;
  };
  struct NodeValue {
    std::vector<EventTree> children;
  };
  struct BranchValue {
    AtomicEvent label;
    std::vector<EventTree> children;
  };

  template <typename V>
  explicit EventTree(V value) : value_(std::move(value)) {}

  std::variant<AtomicValue, NodeValue, BranchValue> value_;
};

/// Number of drawable endpoints: leaves and childless nodes/branches.
inline std::size_t leaf_count(const EventTree& tree) {
  if (tree.is_atomic() || tree.children().empty()) return 1;
  std::size_t total = 0;
  for (const EventTree& child : tree.children()) total += leaf_count(child);
  return total;
}

/// The event a tree denotes: Atomic is its own event, a node is the union
/// of its children, a branch intersects its label with the union of its
/// children. Childless nodes and branches denote the empty event.
template <ProbabilityValue N>
ConcreteEvent semantics(const WorldModel<N>& model, const EventTree& tree) {
  switch (tree.kind()) {
    case EventTree::Kind::Atomic:
      return model.resolve(tree.event());
    case EventTree::Kind::Node: {
      ConcreteEvent acc = model.empty_event();
      for (const EventTree& child : tree.children())
        acc |= semantics(model, child);
      return acc;
    }
    case EventTree::Kind::Branch: {
      ConcreteEvent acc = model.empty_event();
      for (const EventTree& child : tree.children())
        acc |= semantics(model, child);
      return model.resolve(tree.label()) & acc;
    }
  }
  raise(ErrorCode::SemanticError, "corrupt event tree");
}

/// Grafts the child list `level2` under every event of `level1`, which must
/// consist of atomic trees (their events become the branch labels).
inline std::vector<EventTree> branch_product(std::span<const EventTree> level1,
                                             const std::vector<EventTree>& level2) {
  std::vector<EventTree> out;
  out.reserve(level1.size());
  for (const EventTree& head : level1) {
    if (!head.is_atomic())
      raise(ErrorCode::NonAtomicHead,
            "branch labels must come from atomic trees");
    out.push_back(EventTree::branch(head.event(), level2));
  }
  return out;
}

/// Builds the complete event-tree level structure: a right fold of
/// branch_product over the levels, seeded with the last level.
inline std::vector<EventTree> generate(
    std::span<const std::vector<EventTree>> levels,
    std::vector<EventTree> last) {
  std::vector<EventTree> acc = std::move(last);
  for (std::size_t i = levels.size(); i-- > 0;)
    acc = branch_product(levels[i], acc);
  return acc;
}

/// All scenario paths of the complete event tree, in depth-first leaf order
/// (index 0 is the top path; earlier states in a level come first).
inline std::vector<Path> paths(std::span<const std::vector<AtomicEvent>> levels,
                               std::span<const AtomicEvent> last) {
  std::vector<Path> acc;
  acc.reserve(last.size());
  for (const AtomicEvent& event : last) acc.push_back(Path{event});
  for (std::size_t i = levels.size(); i-- > 0;) {
    std::vector<Path> next;
    next.reserve(levels[i].size() * acc.size());
    for (const AtomicEvent& event : levels[i]) {
      for (const Path& tail : acc) {
        Path path;
        path.reserve(tail.size() + 1);
        path.push_back(event);
        path.insert(path.end(), tail.begin(), tail.end());
        next.push_back(std::move(path));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

/// Lifts plain events into atomic trees.
inline std::vector<EventTree> wrap_atomic(std::span<const AtomicEvent> events) {
  std::vector<EventTree> out;
  out.reserve(events.size());
  for (const AtomicEvent& event : events) out.push_back(EventTree::atomic(event));
  return out;
}

/// Lifts each path into a tree whose semantics is the intersection of the
/// path's events (a branch chain ending in an atomic leaf). The empty path
/// becomes a childless node.
inline std::vector<EventTree> wrap_atomic(std::span<const Path> paths) {
  std::vector<EventTree> out;
  out.reserve(paths.size());
  for (const Path& path : paths) {
    if (path.empty()) {
      out.push_back(EventTree::node({}));
      continue;
    }
    EventTree tree = EventTree::atomic(path.back());
    for (std::size_t i = path.size() - 1; i-- > 0;) {
      std::vector<EventTree> child;
      child.push_back(std::move(tree));
      tree = EventTree::branch(path[i], std::move(child));
    }
    out.push_back(std::move(tree));
  }
  return out;
}

}  // namespace etree
