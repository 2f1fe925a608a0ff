#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "etree/error.hpp"
#include "etree/events.hpp"
#include "etree/numeric.hpp"

namespace etree {

/// A finite event over an enumerated world set, stored as a bitset. Every
/// event remembers the size of the universe it lives in; combining events
/// from different universes raises ForeignWorld.
class ConcreteEvent {
 public:
  ConcreteEvent() = default;
  explicit ConcreteEvent(std::size_t universe)
      : universe_(universe), blocks_((universe + 63) / 64, 0) {}

  static ConcreteEvent full(std::size_t universe) {
    ConcreteEvent event(universe);
    for (std::size_t w = 0; w < universe; ++w) event.add(w);
    return event;
  }

  std::size_t universe() const { return universe_; }

  void add(std::size_t world) {
    if (world >= universe_)
      raise(ErrorCode::ForeignWorld, "world index out of range");
    blocks_[world / 64] |= std::uint64_t{1} << (world % 64);
  }

  bool contains(std::size_t world) const {
    if (world >= universe_) return false;
    return (blocks_[world / 64] >> (world % 64)) & 1;
  }

  bool empty() const {
    for (auto block : blocks_)
      if (block != 0) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t total = 0;
    for (auto block : blocks_) total += static_cast<std::size_t>(__builtin_popcountll(block));
    return total;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t w = 0; w < universe_; ++w)
      if (contains(w)) out.push_back(w);
    return out;
  }

  ConcreteEvent operator&(const ConcreteEvent& other) const {
    check_same_universe(other);
    ConcreteEvent result(universe_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      result.blocks_[i] = blocks_[i] & other.blocks_[i];
    return result;
  }

  ConcreteEvent operator|(const ConcreteEvent& other) const {
    check_same_universe(other);
    ConcreteEvent result(universe_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      result.blocks_[i] = blocks_[i] | other.blocks_[i];
    return result;
  }

  ConcreteEvent& operator|=(const ConcreteEvent& other) {
    check_same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
    return *this;
  }

  bool is_disjoint(const ConcreteEvent& other) const {
    check_same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & other.blocks_[i]) return false;
    return true;
  }

  friend bool operator==(const ConcreteEvent& a, const ConcreteEvent& b) {
    return a.universe_ == b.universe_ && a.blocks_ == b.blocks_;
  }
  friend bool operator<(const ConcreteEvent& a, const ConcreteEvent& b) {
    if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
    return a.blocks_ < b.blocks_;
  }

 private:
  void check_same_universe(const ConcreteEvent& other) const {
    if (universe_ != other.universe_)
      raise(ErrorCode::ForeignWorld,
            "events belong to different world models");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> blocks_;
};

/// An event outcome space lifted to concrete events. Set semantics collapse
/// duplicates; the null event is implicit (see is_valid_event_space).
using EventSet = std::set<ConcreteEvent>;

template <ProbabilityValue N>
struct StateDef {
  std::string name;
  N prob;
};

/// The states of one component together with their probabilities. Residual
/// mass (1 - sum) belongs to the implicit null state.
template <ProbabilityValue N>
struct OutcomeSpace {
  ComponentId component;
  std::vector<StateDef<N>> states;

  N state_mass() const {
    N sum(0);
    for (const auto& state : states) sum += state.prob;
    return sum;
  }
  N null_mass() const { return residual_mass(state_mass()); }
};

enum class ViolationKind { DuplicateState, ProbabilityOutOfRange, MassExceedsOne };

constexpr std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateState: return "DuplicateState";
    case ViolationKind::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ViolationKind::MassExceedsOne: return "MassExceedsOne";
  }
  return "UnknownViolation";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }

  std::string summary() const {
    std::string out;
    for (const Violation& v : violations) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(v.kind)) + ": " + v.message;
    }
    return out;
  }
};

/// Checks the outcome-space constraints: distinct states, per-state
/// probability in [0,1], total mass at most 1. The implicit null state
/// absorbs any residual, so completeness always holds.
template <ProbabilityValue N>
ValidationReport validate_space(const OutcomeSpace<N>& space) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const auto& state : space.states) {
    if (!seen.insert(state.name).second)
      report.violations.push_back(
          {ViolationKind::DuplicateState,
           space.component.name + " lists state '" + state.name + "' twice"});
    if (!in_unit_interval(state.prob))
      report.violations.push_back(
          {ViolationKind::ProbabilityOutOfRange,
           space.component.name + ":" + state.name + " has probability " +
               format_probability(state.prob)});
  }
  const N mass = space.state_mass();
  if (!(mass <= N(1)) && !effectively_zero(N(mass - N(1))))
    report.violations.push_back(
        {ViolationKind::MassExceedsOne,
         space.component.name + " state probabilities sum to " +
             format_probability(mass)});
  return report;
}

/// Finite product sample space over independent components. World indices
/// enumerate every total assignment (one state, or the null state when it
/// carries mass, per component) in mixed-radix order with the first
/// component most significant.
template <ProbabilityValue N>
class WorldModel {
 public:
  explicit WorldModel(std::vector<OutcomeSpace<N>> spaces)
      : spaces_(std::move(spaces)) {
    world_count_ = 1;
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      const auto& space = spaces_[i];
      if (space.component.name.empty())
        raise(ErrorCode::InvalidSpace, "component name must be non-empty");
      if (!index_.emplace(space.component.name, i).second)
        raise(ErrorCode::InvalidSpace,
              "duplicate component '" + space.component.name + "'");
      const ValidationReport report = validate_space(space);
      if (!report.ok())
        raise(ErrorCode::InvalidSpace,
              "invalid outcome space: " + report.summary());
      null_mass_.push_back(space.null_mass());
      radix_.push_back(space.states.size() +
                       (null_mass_.back() > N(0) ? 1 : 0));
      world_count_ *= radix_.back();
    }
    stride_.assign(spaces_.size(), 1);
    for (std::size_t i = spaces_.size(); i-- > 1;)
      stride_[i - 1] = stride_[i] * radix_[i];
  }

  const std::vector<OutcomeSpace<N>>& spaces() const { return spaces_; }
  std::size_t world_count() const { return world_count_; }

  bool has_component(const ComponentId& component) const {
    return index_.count(component.name) != 0;
  }

  std::size_t component_index(const ComponentId& component) const {
    const auto it = index_.find(component.name);
    if (it == index_.end())
      raise(ErrorCode::UnknownComponent,
            "unknown component '" + component.name + "'");
    return it->second;
  }

  /// Marginal probability of one atomic event.
  N marginal(const AtomicEvent& event) const {
    const auto& space = spaces_[component_index(event.component)];
    for (const auto& state : space.states)
      if (state.name == event.state) return state.prob;
    raise(ErrorCode::UnknownComponent, "component '" + event.component.name +
                                           "' has no state '" + event.state + "'");
  }

  /// Probability of one world: product of its per-component assignments.
  N world_prob(std::size_t world) const {
    N product(1);
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      const std::size_t digit = (world / stride_[i]) % radix_[i];
      product *= digit < spaces_[i].states.size() ? spaces_[i].states[digit].prob
                                                  : null_mass_[i];
    }
    return product;
  }

  ConcreteEvent empty_event() const {
    require_enumerable();
    return ConcreteEvent(world_count_);
  }

  ConcreteEvent full_event() const {
    require_enumerable();
    return ConcreteEvent::full(world_count_);
  }

  /// The set of worlds in which `event`'s component takes `event`'s state.
  ConcreteEvent resolve(const AtomicEvent& event) const {
    const std::size_t comp = component_index(event.component);
    const auto& space = spaces_[comp];
    for (std::size_t s = 0; s < space.states.size(); ++s)
      if (space.states[s].name == event.state) return digit_event(comp, s);
    raise(ErrorCode::UnknownComponent, "component '" + event.component.name +
                                           "' has no state '" + event.state + "'");
  }

  /// The component's outcome space as concrete events, including the null
  /// event when the null state carries mass.
  EventSet component_space(const ComponentId& component) const {
    const std::size_t comp = component_index(component);
    EventSet out;
    for (std::size_t digit = 0; digit < radix_[comp]; ++digit)
      out.insert(digit_event(comp, digit));
    return out;
  }

 private:
  ConcreteEvent digit_event(std::size_t comp, std::size_t digit) const {
    require_enumerable();
    ConcreteEvent event(world_count_);
    for (std::size_t w = 0; w < world_count_; ++w)
      if ((w / stride_[comp]) % radix_[comp] == digit) event.add(w);
    return event;
  }

  void require_enumerable() const {
    constexpr std::size_t kMaxWorlds = std::size_t{1} << 25;
    if (world_count_ > kMaxWorlds)
      raise(ErrorCode::ModelTooLarge,
            "world enumeration needs " + std::to_string(world_count_) +
                " worlds; disable enumeration-backed checks for models this large");
  }

  std::vector<OutcomeSpace<N>> spaces_;
  std::vector<N> null_mass_;
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> stride_;
  std::size_t world_count_ = 1;
  std::map<std::string, std::size_t> index_;
};

/// Lifted outcome-space validity: pairwise disjoint members. Finiteness is
/// structural and the null event is implicitly present.
inline bool is_valid_event_space(const EventSet& space) {
  for (auto i = space.begin(); i != space.end(); ++i) {
    auto j = i;
    for (++j; j != space.end(); ++j)
      if (!i->is_disjoint(*j)) return false;
  }
  return true;
}

/// All pairwise intersections of two event outcome spaces. Inputs must each
/// be valid spaces over the same model.
inline EventSet inter_product(const EventSet& w1, const EventSet& w2) {
  if (!is_valid_event_space(w1) || !is_valid_event_space(w2))
    raise(ErrorCode::InvalidSpace,
          "inter_product inputs must be pairwise-disjoint event spaces");
  EventSet out;
  for (const ConcreteEvent& x : w1)
    for (const ConcreteEvent& y : w2) out.insert(x & y);
  return out;
}

/// Cartesian product of event outcome spaces: the pairwise intersections,
/// with the side condition that distinct results are mutually exclusive.
inline EventSet product(const EventSet& w1, const EventSet& w2) {
  EventSet out;
  for (const ConcreteEvent& x : w1)
    for (const ConcreteEvent& y : w2) out.insert(x & y);
  if (!is_valid_event_space(out))
    raise(ErrorCode::NotDisjoint,
          "product yielded overlapping events; inputs do not form disjoint spaces");
  return out;
}

/// Folds `product` across a collection of spaces, seeded with `wn`. The
/// fold runs in list order; the result is permutation-invariant as a set.
inline EventSet n_product(std::span<const EventSet> spaces, EventSet wn) {
  EventSet acc = std::move(wn);
  for (const EventSet& space : spaces) acc = product(space, acc);
  return acc;
}

/// Brute-force event probability: the sum of world probabilities over the
/// event's members. This is the oracle every analytic formula is checked
/// against.
template <ProbabilityValue N>
N oracle_prob(const WorldModel<N>& model, const ConcreteEvent& event) {
  if (event.universe() != model.world_count())
    raise(ErrorCode::ForeignWorld,
          "event universe does not match the model's world count");
  N total(0);
  for (std::size_t w : event.members()) total += model.world_prob(w);
  return total;
}

}  // namespace etree
