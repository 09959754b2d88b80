#include <vector>

#include "doctest.h"
#include "gbcsp/model.hpp"

using namespace gbcsp;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected gbcsp::Error");
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("validate derives p, r and the strict flag") {
    const Params params = Params::validate(10, 3, 2, 10, 2);
    CHECK(params.p() == doctest::Approx(2.0 / 9.0));
    CHECK(params.r() == 1.0);
    CHECK(params.strict());
    CHECK(params.tuple_count() == 9);

    CHECK_FALSE(Params::validate(10, 2, 3, 5, 2).strict());
    CHECK_THROWS_AS(require_strict(Params::validate(10, 2, 3, 5, 2)), Error);
  }

  TEST_CASE("validate rejects impossible parameters") {
    CHECK(kind_of([] { Params::validate(3, 2, 4, 1, 1); }) == ErrorKind::ArityExceedsVariables);
    CHECK(kind_of([] { Params::validate(3, 1, 2, 1, 1); }) == ErrorKind::DegenerateDomain);
    CHECK(kind_of([] { Params::validate(3, 2, 2, 1, 5); }) == ErrorKind::EmptyRelation);
    CHECK(kind_of([] { Params::validate(3, 2, 2, 1, 0); }) == ErrorKind::ZeroTightness);
    CHECK_NOTHROW(Params::validate(3, 2, 2, 1, 4));  // q = d^k is allowed, just not strict
  }

  TEST_CASE("ConstraintSpec invariants") {
    const Params params = Params::validate(4, 3, 2, 1, 2);
    const auto c = ConstraintSpec::make({2, 0}, {{2, 1}, {0, 1}}, params);
    CHECK(c.incompatible == std::vector<Tuple>{{0, 1}, {2, 1}});
    CHECK(c.max_variable() == 2);
    CHECK_THROWS_AS(ConstraintSpec::make({1, 1}, {{0, 0}, {1, 1}}, params), Error);
    CHECK_THROWS_AS(ConstraintSpec::make({0, 4}, {{0, 0}, {1, 1}}, params), Error);
    CHECK_THROWS_AS(ConstraintSpec::make({0, 1}, {{0, 0}, {0, 0}}, params), Error);
    CHECK_THROWS_AS(ConstraintSpec::make({0, 1}, {{0, 0}}, params), Error);
    CHECK_THROWS_AS(ConstraintSpec::make({0, 1}, {{0, 3}, {0, 0}}, params), Error);
  }

  TEST_CASE("is_violated on partial assignments") {
    const ConstraintSpec strict{{0, 1}, {{0, 0}}};
    const std::vector<Value> zero{0};
    const std::vector<Value> zero_zero{0, 0};
    CHECK_FALSE(is_violated(strict, zero, 2));
    CHECK(is_violated(strict, zero_zero, 2));

    const ConstraintSpec blocking{{0, 1}, {{0, 0}, {0, 1}}};
    CHECK(is_violated(blocking, zero, 2));
    const std::vector<Value> one{1};
    CHECK_FALSE(is_violated(blocking, one, 2));
    CHECK_FALSE(is_violated(blocking, PartialAssignment{}, 2));
  }

  TEST_CASE("is_consistent") {
    const Params empty_params = Params::validate(2, 2, 2, 0, 1);
    const Instance empty(empty_params, {});
    CHECK(is_consistent(empty, std::vector<Value>{0, 1}));

    const Params params = Params::validate(2, 2, 2, 1, 1);
    const Instance instance(params, {ConstraintSpec{{0, 1}, {{0, 0}}}});
    CHECK_FALSE(is_consistent(instance, std::vector<Value>{0, 0}));
    CHECK(is_consistent(instance, std::vector<Value>{1}));
    CHECK(is_consistent(instance, PartialAssignment{}));
  }

  TEST_CASE("violation is monotone and absent below depth k for strict constraints") {
    // Exhaustive over one strict constraint family: d = 3, k = 3, q = 2.
    const Params params = Params::validate(4, 3, 3, 1, 2);
    const std::vector<std::vector<VarIndex>> scopes{{0, 1, 2}, {3, 1, 0}, {2, 3, 1}};
    const std::vector<std::vector<Tuple>> sets{{{0, 0, 0}, {1, 2, 0}}, {{2, 2, 2}, {2, 2, 1}}};
    for (const auto& scope : scopes) {
      for (const auto& set : sets) {
        const auto c = ConstraintSpec::make(scope, set, params);
        for (std::uint64_t code = 0; code < 81; ++code) {
          std::vector<Value> full(4);
          std::uint64_t rest = code;
          for (auto& v : full) {
            v = static_cast<Value>(rest % 3);
            rest /= 3;
          }
          bool violated_before = false;
          for (std::size_t depth = 0; depth <= 4; ++depth) {
            const bool violated = is_violated(c, PartialAssignment(full.data(), depth), 3);
            if (depth < 3) CHECK_FALSE(violated);
            if (violated_before) CHECK(violated);
            violated_before = violated;
          }
        }
      }
    }
  }

  TEST_CASE("tuple rank is base-d with position 0 most significant") {
    CHECK(tuple_rank(std::vector<Value>{1, 2}, 3) == 5);
    CHECK(tuple_from_rank(5, 3, 2) == Tuple{1, 2});
    for (std::uint64_t rank = 0; rank < 64; ++rank)
      CHECK(tuple_rank(tuple_from_rank(rank, 4, 3), 4) == rank);
  }
}
