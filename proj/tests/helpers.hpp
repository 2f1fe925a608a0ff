#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "etree/model_file.hpp"
#include "etree/prob.hpp"
#include "etree/space.hpp"
#include "etree/tree.hpp"

namespace etree::testing {

inline std::string model_path(const std::string& name) {
  return std::string(ETREE_MODELS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(file), "cannot read " << path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

/// Two-state components from (name, up-probability) pairs; down gets the
/// complement so the null state carries no mass.
template <ProbabilityValue N>
WorldModel<N> two_state_model(const std::vector<std::pair<std::string, N>>& ups) {
  std::vector<OutcomeSpace<N>> spaces;
  for (const auto& [name, up] : ups) {
    spaces.push_back(OutcomeSpace<N>{
        ComponentId{name},
        {{std::string(kUpState), up}, {std::string(kDownState), N(1) - up}}});
  }
  return WorldModel<N>(std::move(spaces));
}

/// The worked three-component example: up probabilities 0.9, 0.8, 0.7.
template <ProbabilityValue N>
WorldModel<N> sample_three_component_model() {
  if constexpr (std::same_as<N, Rational>) {
    return two_state_model<Rational>({{"C1", Rational(9, 10)},
                                      {"C2", Rational(8, 10)},
                                      {"C3", Rational(7, 10)}});
  } else {
    return two_state_model<double>({{"C1", 0.9}, {"C2", 0.8}, {"C3", 0.7}});
  }
}

inline AtomicEvent up(const std::string& name) {
  return AtomicEvent::up(ComponentId{name});
}
inline AtomicEvent down(const std::string& name) {
  return AtomicEvent::down(ComponentId{name});
}

inline Rational random_unit_rational(std::mt19937& rng, int denominator = 1000) {
  std::uniform_int_distribution<int> dist(0, denominator);
  return Rational(dist(rng), denominator);
}

inline ConcreteEvent union_of(const EventSet& events, const ConcreteEvent& empty) {
  ConcreteEvent acc = empty;
  for (const ConcreteEvent& event : events) acc |= event;
  return acc;
}

}  // namespace etree::testing
