#include <algorithm>

#include "doctest.h"
#include "gbcsp/generator.hpp"
#include "gbcsp/uc_solver.hpp"

using namespace gbcsp;

TEST_SUITE("uc_solver") {
  TEST_CASE("reduction by hand") {
    UCState keep(2, 2, {ReducedConstraint{{0, 1}, {{0, 0}, {1, 1}}}});
    CHECK(keep.assign(0, 0) == ReduceStatus::Ok);
    REQUIRE(keep.unit_pool().size() == 1);
    const auto& unit = keep.constraint(keep.unit_pool()[0]);
    CHECK(unit.scope == std::vector<VarIndex>{1});
    CHECK(unit.incompatible == std::vector<Tuple>{{0}});

    UCState drop(2, 2, {ReducedConstraint{{0, 1}, {{1, 1}}}});
    CHECK(drop.assign(0, 0) == ReduceStatus::Ok);
    CHECK(drop.all_removed());

    UCState empty(2, 2, {ReducedConstraint{{1}, {{0}}}});
    CHECK(empty.assign(1, 0) == ReduceStatus::EmptyConstraint);
  }

  TEST_CASE("projection merges duplicate tuples") {
    UCState state(3, 3, {ReducedConstraint{{0, 1, 2}, {{0, 1, 2}, {0, 2, 2}, {1, 1, 1}}}});
    CHECK(state.assign(1, 1) == ReduceStatus::Ok);
    CHECK(state.constraint(0).scope == std::vector<VarIndex>{0, 2});
    CHECK(state.constraint(0).incompatible == std::vector<Tuple>{{0, 2}, {1, 1}});
    CHECK(state.assign(0, 1) == ReduceStatus::Ok);
    CHECK(state.constraint(0).incompatible == std::vector<Tuple>{{1}});
    CHECK(state.unit_pool().size() == 1);
    CHECK(state.allowed_values(0) == std::vector<Value>{0, 2});
  }

  TEST_CASE("hand trace ending in a solution") {
    const Instance instance(Params::validate(2, 2, 2, 1, 1), {ConstraintSpec{{0, 1}, {{0, 0}}}});
    UCState state = UCState::from_instance(instance);
    CHECK(state.unit_pool().empty());
    CHECK(state.assign(0, 0) == ReduceStatus::Ok);
    REQUIRE(state.unit_pool().size() == 1);
    const std::size_t unit = state.unit_pool()[0];
    CHECK(state.allowed_values(unit) == std::vector<Value>{1});
    CHECK(state.assign(1, 1) == ReduceStatus::Ok);
    CHECK(state.all_removed());
    CHECK(state.values() == std::vector<Value>{0, 1});
  }

  TEST_CASE("two conflicting units produce an empty constraint") {
    UCState state(1, 2, {ReducedConstraint{{0}, {{0}}}, ReducedConstraint{{0}, {{1}}}});
    CHECK(state.unit_pool().size() == 2);
    const auto allowed = state.allowed_values(0);
    REQUIRE(allowed == std::vector<Value>{1});
    CHECK(state.assign(0, allowed[0]) == ReduceStatus::EmptyConstraint);
  }

  TEST_CASE("empty instance always succeeds") {
    const Instance instance(Params::validate(6, 3, 2, 0, 2), {});
    for (std::uint64_t s = 0; s < 20; ++s) {
      const UCOutcome outcome = run_uc(instance, SeedSpec{1, s});
      CHECK(outcome.tag == UCTag::SolutionFound);
      REQUIRE(outcome.assignment);
      CHECK(outcome.assignment->size() == 6);
    }
    CHECK(uc_success_rate(Params::validate(6, 3, 2, 0, 2), 25, 9) == 1.0);
  }

  TEST_CASE("non-strict instances are rejected") {
    const Instance instance(Params::validate(3, 2, 3, 0, 2), {});
    CHECK_THROWS_AS(run_uc(instance, SeedSpec{}), Error);
  }

  TEST_CASE("soundness and at most n steps on random instances") {
    for (std::uint64_t s = 0; s < 300; ++s) {
      const Params params = Params::validate(20, 3, 2 + static_cast<std::int64_t>(s % 2),
                                             static_cast<std::int64_t>(s % 40), 2);
      const Instance instance = sample_instance(params, SeedSpec{5, s});
      const UCOutcome outcome = run_uc(instance, SeedSpec{5, s});
      CHECK(outcome.steps <= 20);
      if (outcome.tag == UCTag::SolutionFound) CHECK(is_consistent(instance, *outcome.assignment));
    }
  }

  TEST_CASE("reduction preserves semantics") {
    // For every completion of the unset variables: the reduced constraints
    // hold iff the original instance holds on the extended assignment.
    const std::int64_t n = 5;
    const std::int64_t d = 3;
    for (std::uint64_t s = 0; s < 40; ++s) {
      const Instance instance = sample_instance(Params::validate(n, d, 3, 6, 2), SeedSpec{17, s});
      UCState state = UCState::from_instance(instance);
      Rng rng(SeedSpec{17, s}, Lane::Heuristic);
      for (int step = 0; step < 2; ++step) {
        const auto& unset = state.unset_variables();
        const VarIndex var = unset[rng.below(unset.size())];
        if (state.assign(var, static_cast<Value>(rng.below(d))) == ReduceStatus::EmptyConstraint) break;
        for (std::uint64_t code = 0; code < 243; ++code) {
          std::vector<Value> full = state.values();
          std::uint64_t rest = code;
          for (auto& v : full) {
            const auto digit = static_cast<Value>(rest % 3);
            rest /= 3;
            if (v < 0) v = digit;
          }
          bool reduced_ok = true;
          for (const auto& c : state.live_constraints()) {
            Tuple induced;
            for (VarIndex v : c.scope) induced.push_back(full[static_cast<std::size_t>(v)]);
            if (std::find(c.incompatible.begin(), c.incompatible.end(), induced) != c.incompatible.end())
              reduced_ok = false;
          }
          CHECK(reduced_ok == is_consistent(instance, full));
        }
      }
    }
  }

  TEST_CASE("success rate drops far above the threshold") {
    const double low = uc_success_rate(Params::validate(100, 2, 3, 200, 1), 300, 1);
    const double high = uc_success_rate(Params::validate(100, 2, 3, 800, 1), 300, 1);
    CHECK(low > 0.3);
    CHECK(high < 0.05);
  }
}
