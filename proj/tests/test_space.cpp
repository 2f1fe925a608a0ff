#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"

using namespace etree;
using namespace etree::testing;

namespace {

OutcomeSpace<Rational> space_of(const std::string& component,
                                std::vector<std::pair<std::string, Rational>> states) {
  OutcomeSpace<Rational> space;
  space.component = ComponentId{component};
  for (auto& [name, prob] : states) space.states.push_back({name, prob});
  return space;
}

bool has_violation(const ValidationReport& report, ViolationKind kind) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("validate_space accepts a complete two-state space") {
  const auto space =
      space_of("C", {{"up", Rational(7, 10)}, {"down", Rational(3, 10)}});
  CHECK(validate_space(space).ok());
  CHECK(space.null_mass() == 0);
}

TEST_CASE("validate_space reports excess mass") {
  const auto space =
      space_of("C", {{"up", Rational(6, 10)}, {"down", Rational(6, 10)}});
  const auto report = validate_space(space);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, ViolationKind::MassExceedsOne));
}

TEST_CASE("validate_space reports duplicate states") {
  const auto space =
      space_of("C", {{"up", Rational(1, 2)}, {"up", Rational(3, 10)}});
  CHECK(has_violation(validate_space(space), ViolationKind::DuplicateState));
}

TEST_CASE("validate_space reports out-of-range probabilities") {
  const auto space = space_of("C", {{"up", Rational(11, 10)}});
  CHECK(has_violation(validate_space(space), ViolationKind::ProbabilityOutOfRange));
  const auto negative = space_of("C", {{"up", Rational(-1, 10)}});
  CHECK(has_violation(validate_space(negative), ViolationKind::ProbabilityOutOfRange));
}

TEST_CASE("world model counts the null state only when it carries mass") {
  const auto complete = two_state_model<Rational>({{"A", Rational(1, 2)}});
  CHECK(complete.world_count() == 2);

  WorldModel<Rational> with_null(
      {space_of("A", {{"up", Rational(1, 2)}, {"down", Rational(1, 4)}})});
  CHECK(with_null.world_count() == 3);
}

TEST_CASE("world probabilities sum to one exactly") {
  WorldModel<Rational> model(
      {space_of("A", {{"up", Rational(1, 3)}, {"down", Rational(1, 3)}}),
       space_of("B", {{"b0", Rational(2, 7)}, {"b1", Rational(3, 7)},
                      {"b2", Rational(1, 7)}})});
  CHECK(model.world_count() == 3 * 4);
  Rational total = 0;
  for (std::size_t w = 0; w < model.world_count(); ++w)
    total += model.world_prob(w);
  CHECK(total == 1);
}

TEST_CASE("duplicate components are rejected") {
  CHECK_THROWS_WITH_AS(
      WorldModel<Rational>({space_of("A", {{"up", Rational(1)}}),
                            space_of("A", {{"up", Rational(1)}})}),
      doctest::Contains("duplicate"), Error);
}

TEST_CASE("inter_product of singletons is the singleton intersection") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)},
                                                {"B", Rational(1, 2)}});
  const EventSet w1 = {model.resolve(up("A"))};
  const EventSet w2 = {model.resolve(up("B"))};
  const EventSet result = inter_product(w1, w2);
  REQUIRE(result.size() == 1);
  CHECK(*result.begin() == (model.resolve(up("A")) & model.resolve(up("B"))));
}

TEST_CASE("inter_product of two 2-state spaces yields the four worlds") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)},
                                                {"B", Rational(1, 2)}});
  REQUIRE(model.world_count() == 4);
  const EventSet result = inter_product(model.component_space(ComponentId{"A"}),
                                        model.component_space(ComponentId{"B"}));
  CHECK(result.size() == 4);
  for (const ConcreteEvent& event : result) CHECK(event.count() == 1);
}

TEST_CASE("inter_product with an empty-event space intersects to nothing") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)}});
  const EventSet w1 = {model.empty_event()};
  const EventSet w2 = model.component_space(ComponentId{"A"});
  for (const ConcreteEvent& event : inter_product(w1, w2)) CHECK(event.empty());
}

TEST_CASE("inter_product rejects overlapping inputs") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)},
                                                {"B", Rational(1, 2)}});
  const EventSet overlapping = {model.resolve(up("A")), model.full_event()};
  CHECK_THROWS_AS(inter_product(overlapping, {model.resolve(up("B"))}), Error);
  try {
    inter_product(overlapping, {model.resolve(up("B"))});
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::InvalidSpace);
  }
}

TEST_CASE("product of independent 2-state spaces is four disjoint events") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)},
                                                {"B", Rational(1, 2)}});
  const EventSet result = product(model.component_space(ComponentId{"A"}),
                                  model.component_space(ComponentId{"B"}));
  CHECK(result.size() == 4);
  CHECK(is_valid_event_space(result));
}

TEST_CASE("product with the trivial space adjoins the empty event") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)},
                                                {"B", Rational(1, 2)}});
  const EventSet w1 = model.component_space(ComponentId{"A"});
  const EventSet w2 = {model.full_event(), model.empty_event()};
  EventSet expected = w1;
  expected.insert(model.empty_event());
  CHECK(product(w1, w2) == expected);
}

TEST_CASE("product flags overlapping results from a malformed input") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)},
                                                {"B", Rational(1, 2)}});
  const ConcreteEvent a_up = model.resolve(up("A"));
  const ConcreteEvent either = a_up | model.resolve(up("B"));
  const EventSet malformed = {a_up, either};
  CHECK_THROWS_AS(product({model.full_event()}, malformed), Error);
  try {
    product({model.full_event()}, malformed);
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::NotDisjoint);
  }
}

TEST_CASE("theorem: products of valid spaces stay valid") {
  const auto model = two_state_model<Rational>(
      {{"A", Rational(1, 3)}, {"B", Rational(2, 5)}, {"C", Rational(9, 11)}});
  const EventSet wa = model.component_space(ComponentId{"A"});
  const EventSet wb = model.component_space(ComponentId{"B"});
  const EventSet wc = model.component_space(ComponentId{"C"});
  for (const auto& [w1, w2] : {std::pair{wa, wb}, {wb, wc}, {wa, wc}}) {
    const EventSet result = product(w1, w2);
    CHECK(is_valid_event_space(result));
  }
}

TEST_CASE("n_product with no spaces returns the seed") {
  const auto model = two_state_model<Rational>({{"A", Rational(1, 2)}});
  const EventSet seed = model.component_space(ComponentId{"A"});
  CHECK(n_product({}, seed) == seed);
}

TEST_CASE("n_product over three 2-state spaces yields eight disjoint events") {
  const auto model = sample_three_component_model<Rational>();
  std::vector<EventSet> spaces = {model.component_space(ComponentId{"C1"}),
                                  model.component_space(ComponentId{"C2"})};
  const EventSet result =
      n_product(spaces, model.component_space(ComponentId{"C3"}));
  CHECK(result.size() == 8);
  CHECK(is_valid_event_space(result));
  CHECK(union_of(result, model.empty_event()) == model.full_event());
}

TEST_CASE("n_product is permutation-invariant") {
  const auto model = two_state_model<Rational>(
      {{"A", Rational(1, 3)}, {"B", Rational(2, 5)}, {"C", Rational(9, 11)},
       {"D", Rational(3, 4)}});
  std::vector<EventSet> spaces = {model.component_space(ComponentId{"A"}),
                                  model.component_space(ComponentId{"B"}),
                                  model.component_space(ComponentId{"C"})};
  const EventSet seed = model.component_space(ComponentId{"D"});
  const EventSet reference = n_product(spaces, seed);
  std::sort(spaces.begin(), spaces.end());
  do {
    CHECK(n_product(spaces, seed) == reference);
  } while (std::next_permutation(spaces.begin(), spaces.end()));
}

TEST_CASE("oracle_prob on the trivial events") {
  const auto model = sample_three_component_model<Rational>();
  CHECK(oracle_prob(model, model.empty_event()) == 0);
  CHECK(oracle_prob(model, model.full_event()) == 1);
}

TEST_CASE("oracle_prob recovers a marginal by enumeration") {
  const auto model = two_state_model<Rational>(
      {{"C1", Rational(7, 10)}, {"C2", Rational(1, 2)}, {"C3", Rational(1, 3)}});
  CHECK(oracle_prob(model, model.resolve(up("C1"))) == Rational(7, 10));
}

TEST_CASE("oracle_prob is additive over disjoint events") {
  std::mt19937 rng(11);
  const auto model = two_state_model<Rational>(
      {{"A", random_unit_rational(rng)}, {"B", random_unit_rational(rng)}});
  const ConcreteEvent a = model.resolve(up("A"));
  const ConcreteEvent b = model.resolve(down("A")) & model.resolve(up("B"));
  REQUIRE(a.is_disjoint(b));
  CHECK(oracle_prob(model, a | b) == oracle_prob(model, a) + oracle_prob(model, b));
}

TEST_CASE("oracle_prob rejects events from another model") {
  const auto small = two_state_model<Rational>({{"A", Rational(1, 2)}});
  const auto large = sample_three_component_model<Rational>();
  CHECK_THROWS_AS(oracle_prob(large, small.full_event()), Error);
  try {
    oracle_prob(large, small.full_event());
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::ForeignWorld);
  }
}

}  // TEST_SUITE
