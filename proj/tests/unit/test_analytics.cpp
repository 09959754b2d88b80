#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gbcsp/analytics.hpp"
#include "gbcsp/oracle.hpp"

using namespace gbcsp;
using namespace gbcsp::analytics;

namespace {

const double kLn2 = std::numbers::ln2;

AnalyticParams ap(double d, std::int64_t k, double p, double r) {
  return AnalyticParams::validate(d, k, p, r);
}

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("g at the boundary and by direct evaluation") {
    // p = 1/5 is not q/d^2 for any strict integer q, so use the continuum form.
    const AnalyticParams a = ap(4.0, 2, 0.2, 1.0);
    CHECK(g(1, 10, a) == 1.0);
    CHECK(g(5, 10, a) == doctest::Approx(43.0 / 45.0).epsilon(1e-15));
    CHECK(g(9, 10, a) == doctest::Approx(0.84).epsilon(1e-15));
    CHECK_THROWS_AS(g(10, 10, a), Error);

    const Params params = Params::validate(10, 3, 2, 1, 2);
    CHECK(g_exact(1, params) == Rational(1));
    CHECK(g_exact(5, params) == Rational(1) - Rational(2, 9) * Rational(20, 90));
    CHECK_THROWS_AS(g_exact(-1, params), Error);
    CHECK_THROWS_AS(g_exact(10, params), Error);
    CHECK_THROWS_AS(g_exact(3, Params::validate(10, 2, 3, 1, 2)), Error);
  }

  TEST_CASE("g_exact equals the binomial oracle for n <= 10") {
    for (std::int64_t n = 3; n <= 10; ++n)
      for (std::int64_t k = 2; k <= 3; ++k)
        for (std::int64_t d = 2; d <= 5; ++d)
          for (std::int64_t q = 1; q < d; ++q) {
            const Params params = Params::validate(n, d, k, 1, q);
            const Rational p(BigInt(q), BigInt(params.tuple_count()));
            for (std::int64_t i = 0; i < n; ++i)
              CHECK(g_exact(i, params) == oracle::exact_g_combinatorial(n, k, p, i));
          }
  }

  TEST_CASE("log exact expected nodes") {
    CHECK(log_exact_expected_nodes(Params::validate(2, 2, 2, 0, 1)) == doctest::Approx(std::log(7.0)).epsilon(1e-15));
    CHECK(log_exact_expected_nodes(Params::validate(3, 2, 2, 0, 1)) == doctest::Approx(std::log(15.0)).epsilon(1e-15));

    // Frozen from an exact rational evaluation.
    CHECK(log_exact_expected_nodes(Params::validate(10, 3, 2, 10, 2)) ==
          doctest::Approx(9.7242993755335213).epsilon(1e-13));
    CHECK(log_exact_expected_nodes(Params::validate(12, 2, 3, 12, 1)) ==
          doctest::Approx(8.1564940499728375).epsilon(1e-13));
    CHECK(log_exact_expected_nodes(Params::validate(6, 3, 2, 6, 2)) ==
          doctest::Approx(6.2478716425400008).epsilon(1e-13));
    CHECK_THROWS_AS(log_exact_expected_nodes(Params::validate(6, 2, 2, 6, 2)), Error);

    // Integer and continuum forms agree when t = r n.
    const Params params = Params::validate(40, 3, 3, 60, 2);
    CHECK(log_exact_expected_nodes(params) ==
          doctest::Approx(log_exact_expected_nodes(AnalyticParams::from(params), 40)).epsilon(1e-14));
  }

  TEST_CASE("expected solutions and thresholds") {
    CHECK(log_expected_solutions(Params::validate(3, 2, 2, 0, 1)) == doctest::Approx(std::log(8.0)));
    CHECK(log_expected_solutions(Params::validate(3, 2, 2, 2, 1)) == doctest::Approx(std::log(4.5)));

    CHECK(r_critical(2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r_critical(2.0, 1.0 / 8.0) == doctest::Approx(5.19089306968443).epsilon(1e-13));
    CHECK(r_critical(3.0, 2.0 / 9.0) == doctest::Approx(4.37146524448703).epsilon(1e-13));

    CHECK(uc_bound(2.0, 2) == 1.0);
    CHECK(uc_bound(7.0, 2) == 1.0);
    CHECK(uc_bound(2.0, 3) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(uc_bound(3.0, 3) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK(r_zero(2.0, 3, 1.0 / 8.0) == doctest::Approx(7.0 / 3.0 * kLn2).epsilon(1e-15));
    CHECK(r_zero(2.0, 2, 0.25) == doctest::Approx(1.5 * kLn2).epsilon(1e-15));
    CHECK(r_zero(3.0, 2, 2.0 / 9.0) == doctest::Approx(1.92257150516919).epsilon(1e-13));

    CHECK_THROWS_AS(AnalyticParams::validate(2.0, 3, 0.25, 1.0), Error);  // p = 1/d^(k-1)
    CHECK_THROWS_AS(AnalyticParams::validate(2.0, 3, 0.0, 1.0), Error);
    CHECK_THROWS_AS(AnalyticParams::validate(2.0, 3, 0.1, 0.0), Error);
  }

  TEST_CASE("f and its derivatives") {
    for (double d : {2.0, 3.0, 5.5}) {
      for (std::int64_t k : {2, 3, 4}) {
        const double p = 0.6 / std::pow(d, static_cast<double>(k - 1));
        for (double r : {0.3, 1.0, 4.0, 25.0}) {
          const AnalyticParams a = ap(d, k, p, r);
          CHECK(f(0.0, a) == 0.0);
          CHECK(f_prime(0.0, a) == doctest::Approx(std::log(d)));
          CHECK(f_prime(1.0, a) == doctest::Approx((1.0 - r / r_zero(a)) * std::log(d)).epsilon(1e-12));
          for (int j = 1; j <= 9; ++j) {
            const double x = j / 10.0;
            const double h = 1e-5;
            const double fd1 = (f(x + h, a) - f(x - h, a)) / (2 * h);
            const double fd2 = (f_prime(x + h, a) - f_prime(x - h, a)) / (2 * h);
            CHECK(std::abs(fd1 - f_prime(x, a)) <= 1e-6 * std::max(1.0, std::abs(f_prime(x, a))));
            CHECK(std::abs(fd2 - f_second(x, a)) <= 1e-6 * std::max(1.0, std::abs(f_second(x, a))));
          }
        }
      }
    }
    CHECK_THROWS_AS(f(1.5, ap(2, 2, 0.25, 1)), Error);
  }

  TEST_CASE("zeta against the quadratic formula") {
    const AnalyticParams a = ap(2.0, 2, 0.25, 3.0);
    // ln2 (1 - x^2/4) = 1.5 x  ->  (ln2/4) x^2 + 1.5 x - ln2 = 0.
    const double root = (-1.5 + std::sqrt(2.25 + kLn2 * kLn2)) / (0.5 * kLn2);
    const double z = zeta(a);
    CHECK(z == doctest::Approx(root).epsilon(1e-11));
    CHECK(z == doctest::Approx(0.439757243545574).epsilon(1e-11));
    CHECK(std::abs(f_prime(z, a)) <= 1e-10);
    CHECK_THROWS_AS(zeta(ap(2.0, 2, 0.25, 1.0)), Error);
  }

  TEST_CASE("zeta brackets") {
    const double d = 3.0;
    const std::int64_t k = 3;
    const double p = 0.5 / 9.0;
    const double r0 = r_zero(d, k, p);
    {
      const AnalyticParams a = ap(d, k, p, r0 * (1 + 1e-4));
      const double x0 = std::pow(std::log(d) / (std::log(d) + (a.r() - r0) * p * k), 1.0 / (k - 1));
      const double z = zeta(a);
      CHECK(z > x0);
      CHECK(z < 1.0);
      CHECK(z > 0.999);
    }
    {
      const AnalyticParams a = ap(d, k, p, 100 * r0);
      const double x0 = std::pow(std::log(d) / (a.r() * k * p), 1.0 / (k - 1));
      CHECK(zeta(a) < x0);
    }
  }

  TEST_CASE("F forms") {
    const AnalyticParams below = ap(2.0, 3, 1.0 / 8.0, 1.0);
    CHECK(big_F(below) == doctest::Approx(kLn2 + std::log(7.0 / 8.0)).epsilon(1e-15));

    const AnalyticParams above = ap(2.0, 2, 0.25, 3.0);
    const double z = zeta(above);
    CHECK(big_F(above) == doctest::Approx(f(z, above)));
    CHECK(std::abs(big_F(above) - big_F_from_maximizer(above, z)) <= 1e-10);

    for (double d : {2.0, 3.0, 4.0})
      for (std::int64_t k : {2, 3, 4})
        for (double scale : {0.25, 0.5, 0.9}) {
          const double p = scale / std::pow(d, static_cast<double>(k - 1));
          const double r0 = r_zero(d, k, p);
          CHECK(std::abs(big_F(ap(d, k, p, r0)) - big_F_at_r_zero(d, k, p)) <= 1e-12);
        }
  }

  TEST_CASE("F slope matches finite differences above r0") {
    const AnalyticParams a = ap(3.0, 3, 0.5 / 9.0, 60.0);
    const double h = 1e-4 * a.r();
    const double fd = (big_F(a.with_r(a.r() + h)) - big_F(a.with_r(a.r() - h))) / (2 * h);
    CHECK(std::abs(fd - big_F_slope(a)) <= 1e-6);
    CHECK(big_F_slope(a) < 0.0);
  }

  TEST_CASE("regimes and the prefactor") {
    const double p = 1.0 / 8.0;
    const double r0 = r_zero(2.0, 3, p);
    CHECK(classify(ap(2.0, 3, p, 0.5 * r0)) == Regime::Subcritical);
    CHECK(classify(ap(2.0, 3, p, r0)) == Regime::Critical);
    CHECK(classify(ap(2.0, 3, p, r0 * (1 + 1e-10))) == Regime::Critical);
    CHECK(classify(ap(2.0, 3, p, 2 * r0)) == Regime::Supercritical);

    // k = 2: sigma(1) = 0 so phi(1) = d.
    const AnalyticParams two = ap(3.0, 2, 0.2, 0.5);
    CHECK(sigma(1.0, two) == 0.0);
    CHECK(log_phi(1.0, two) == doctest::Approx(std::log(3.0)));

    const Asymptote sub = prefactor_and_asymptote(ap(2.0, 3, p, 0.5 * r0), 400);
    CHECK(sub.regime == Regime::Subcritical);
    CHECK(sub.zeta == 1.0);
    CHECK(sub.log_prefactor == doctest::Approx(kLn2 - std::log(std::pow(2.0, 0.5) - 1.0)));
    const double exact = log_exact_expected_nodes(ap(2.0, 3, p, 0.5 * r0), 400);
    CHECK(std::abs(std::exp(sub.log_T_asym - exact) - 1.0) < 0.05);

    // The subcritical prefactor grows without bound as r approaches r0.
    const Asymptote near = prefactor_and_asymptote(ap(2.0, 3, p, r0 * (1 - 1e-4)), 400);
    CHECK(near.log_prefactor > sub.log_prefactor + 5);
    CHECK_FALSE(near.warning.empty());
    CHECK(near.neighbor_log_T_asym.has_value());
    CHECK(sub.warning.empty());
  }

  TEST_CASE("predict") {
    const Prediction prediction = predict(Params::validate(10, 3, 2, 10, 2));
    CHECK(prediction.regime == Regime::Subcritical);
    CHECK(prediction.r0 == doctest::Approx(1.92257150516919));
    CHECK(prediction.zeta == 1.0);
    CHECK(prediction.log_T_exact >= 0.0);
    CHECK(prediction.F > 0.0);
    CHECK(prediction.uc_bound == 1.0);
    // Regime tag agrees with the sign of f'(1).
    const AnalyticParams a = AnalyticParams::from(Params::validate(10, 3, 2, 10, 2));
    CHECK(f_prime(1.0, a) > 0.0);

    const Prediction above = predict(Params::validate(30, 2, 3, 90, 1));
    CHECK(above.regime == Regime::Supercritical);
    CHECK(above.zeta < 1.0);
    CHECK(above.zeta > 0.0);

    CHECK_THROWS_AS(predict(Params::validate(10, 3, 2, 0, 2)), Error);
    CHECK_THROWS_AS(predict(Params::validate(10, 2, 2, 5, 2)), Error);
  }
}
