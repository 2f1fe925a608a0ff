#pragma once

#include <cmath>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "etree/events.hpp"
#include "etree/space.hpp"
#include "etree/transform.hpp"
#include "etree/tree.hpp"

namespace etree {

/// Evaluation switches. Disjointness of sibling events is a semantic
/// precondition of node sums; in exact-rational mode the check always runs,
/// in float mode it can be switched off for speed.
struct ProbOptions {
  bool check_disjoint = true;
};

namespace detail {

template <ProbabilityValue N>
constexpr bool check_is_mandatory = std::same_as<N, Rational>;

template <ProbabilityValue N>
bool effective_check(const ProbOptions& options) {
  return check_is_mandatory<N> || options.check_disjoint;
}

inline void collect_components(const EventTree& tree, std::set<std::string>& out) {
  switch (tree.kind()) {
    case EventTree::Kind::Atomic:
      out.insert(tree.event().component.name);
      return;
    case EventTree::Kind::Branch:
      out.insert(tree.label().component.name);
      [[fallthrough]];
    case EventTree::Kind::Node:
      for (const EventTree& child : tree.children()) collect_components(child, out);
      return;
  }
}

template <ProbabilityValue N>
void check_children_disjoint(const WorldModel<N>& model,
                             std::span<const EventTree> children) {
  std::vector<ConcreteEvent> events;
  events.reserve(children.size());
  for (const EventTree& child : children)
    events.push_back(semantics(model, child));
  for (std::size_t i = 0; i < events.size(); ++i)
    for (std::size_t j = i + 1; j < events.size(); ++j)
      if (!events[i].is_disjoint(events[j]))
        raise(ErrorCode::NotDisjoint,
              "sibling events " + std::to_string(i) + " and " +
                  std::to_string(j) + " overlap");
}

}  // namespace detail

/// Marginal probabilities of the listed events, in order.
template <ProbabilityValue N>
std::vector<N> prob_list(const WorldModel<N>& model,
                         std::span<const AtomicEvent> events) {
  std::vector<N> out;
  out.reserve(events.size());
  for (const AtomicEvent& event : events) out.push_back(model.marginal(event));
  return out;
}

/// Sum of the individual event probabilities (no disjointness implied by
/// the combinator itself).
template <ProbabilityValue N>
N sum_prob(const WorldModel<N>& model, std::span<const ConcreteEvent> events) {
  N total(0);
  for (const ConcreteEvent& event : events) total += oracle_prob(model, event);
  return total;
}

/// sum_prob applied to each inner list, in order.
template <ProbabilityValue N>
std::vector<N> sum_prob_2d(const WorldModel<N>& model,
                           std::span<const std::vector<ConcreteEvent>> lists) {
  std::vector<N> out;
  out.reserve(lists.size());
  for (const auto& list : lists) out.push_back(sum_prob<N>(model, list));
  return out;
}

/// Product of a list of values; empty product is 1.
template <ProbabilityValue N>
N prod(std::span<const N> values) {
  N result(1);
  for (const N& value : values) result *= value;
  return result;
}

/// Probability of a path under component independence: the product of the
/// event marginals. A component occurring twice voids the independence
/// argument, so it is rejected rather than silently multiplied.
template <ProbabilityValue N>
N prob_path(const WorldModel<N>& model, const Path& path) {
  std::set<std::string> seen;
  N result(1);
  for (const AtomicEvent& event : path) {
    if (!seen.insert(event.component.name).second)
      raise(ErrorCode::DuplicateComponent,
            "component '" + event.component.name + "' occurs twice in a path");
    result *= model.marginal(event);
  }
  return result;
}

/// Analytic tree probability:
///   atomic  -> marginal
///   node    -> sum over children (children must be mutually exclusive)
///   branch  -> label marginal times the children sum (label independent of
///              the subtree, enforced as: distinct components)
template <ProbabilityValue N>
N prob_tree(const WorldModel<N>& model, const EventTree& tree,
            const ProbOptions& options = {}) {
  switch (tree.kind()) {
    case EventTree::Kind::Atomic:
      return model.marginal(tree.event());
    case EventTree::Kind::Node: {
      if (detail::effective_check<N>(options))
        detail::check_children_disjoint(model, tree.children());
      N total(0);
      for (const EventTree& child : tree.children())
        total += prob_tree(model, child, options);
      return total;
    }
    case EventTree::Kind::Branch: {
      std::set<std::string> below;
      for (const EventTree& child : tree.children())
        detail::collect_components(child, below);
      if (below.count(tree.label().component.name))
        raise(ErrorCode::DependentLabel,
              "branch label '" + tree.label().label() +
                  "' shares a component with its subtree");
      if (detail::effective_check<N>(options))
        detail::check_children_disjoint(model, tree.children());
      N total(0);
      for (const EventTree& child : tree.children())
        total += prob_tree(model, child, options);
      return model.marginal(tree.label()) * total;
    }
  }
  raise(ErrorCode::SemanticError, "corrupt event tree");
}

/// Probability of a node over the given sub-trees: the sum of their
/// probabilities, valid because sibling scenarios are mutually exclusive.
template <ProbabilityValue N>
N prob_node(const WorldModel<N>& model, std::span<const EventTree> children,
            const ProbOptions& options = {}) {
  if (detail::effective_check<N>(options))
    detail::check_children_disjoint(model, children);
  N total(0);
  for (const EventTree& child : children)
    total += prob_tree(model, child, options);
  return total;
}

/// Probability of a labelled branch: P(label) times the children sum.
template <ProbabilityValue N>
N prob_branch(const WorldModel<N>& model, const AtomicEvent& label,
              std::span<const EventTree> children, const ProbOptions& options = {}) {
  std::vector<EventTree> copy(children.begin(), children.end());
  return prob_tree(model, EventTree::branch(label, std::move(copy)), options);
}

/// Probability of the complete generated tree: the product over levels of
/// each level's summed marginals. Every level must be one component's
/// distinct states, and no component may occur on two levels.
template <ProbabilityValue N>
N prob_generate(const WorldModel<N>& model,
                std::span<const std::vector<AtomicEvent>> levels,
                std::span<const AtomicEvent> last) {
  std::set<std::string> level_components;
  const auto level_sum = [&](std::span<const AtomicEvent> level) {
    std::set<std::string> states;
    N sum(0);
    for (const AtomicEvent& event : level) {
      if (event.component.name != level.front().component.name)
        raise(ErrorCode::InvalidSpace,
              "a tree level must hold states of a single component");
      if (!states.insert(event.state).second)
        raise(ErrorCode::InvalidSpace,
              "state '" + event.label() + "' repeated within a level");
      sum += model.marginal(event);
    }
    if (!level.empty() &&
        !level_components.insert(level.front().component.name).second)
      raise(ErrorCode::DuplicateComponent,
            "component '" + level.front().component.name +
                "' appears on two levels");
    return sum;
  };

  N result = level_sum(last);
  for (const auto& level : levels) result *= level_sum(level);
  return result;
}

/// Assigns the operating/failing pair to each component, preserving order.
inline std::vector<std::vector<AtomicEvent>> two_state(
    std::span<const ComponentId> components) {
  std::vector<std::vector<AtomicEvent>> out;
  out.reserve(components.size());
  for (const ComponentId& component : components)
    out.push_back({AtomicEvent::up(component), AtomicEvent::down(component)});
  return out;
}

/// Failure probability by time t under a constant failure rate:
/// 1 - exp(-rate * t).
inline double exp_cdf(double rate, double t) {
  if (rate < 0) raise(ErrorCode::NegativeRate, "failure rate must be >= 0");
  if (t < 0) raise(ErrorCode::NegativeTime, "time horizon must be >= 0");
  return -std::expm1(-rate * t);
}

/// Survival (operating) probability by time t: exp(-rate * t).
inline double exp_survival(double rate, double t) {
  if (rate < 0) raise(ErrorCode::NegativeRate, "failure rate must be >= 0");
  if (t < 0) raise(ErrorCode::NegativeTime, "time horizon must be >= 0");
  return std::exp(-rate * t);
}

}  // namespace etree
