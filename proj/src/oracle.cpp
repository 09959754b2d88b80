#include "gbcsp/oracle.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <fmt/format.h>

#include "gbcsp/analytics.hpp"
#include "gbcsp/backtracker.hpp"
#include "gbcsp/generator.hpp"
#include "gbcsp/instance_io.hpp"

namespace gbcsp::oracle {

namespace {

using HighPrecision = boost::multiprecision::cpp_dec_float_50;

// Advances an odometer over [0, d)^size, last position fastest. Returns
// false after the final combination.
bool advance(std::vector<Value>& digits, std::int64_t d) {
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (++digits[j] < d) return true;
    digits[j] = 0;
  }
  return false;
}

}  // namespace

OracleReport brute_force(const Instance& instance, std::uint64_t max_leaves) {
  const std::int64_t n = instance.params().n();
  const std::int64_t d = instance.params().d();
  std::uint64_t leaves = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (leaves > max_leaves / static_cast<std::uint64_t>(d))
      throw Error(ErrorKind::SizeGuard,
                  fmt::format("d^n = {}^{} exceeds the brute-force limit {}", d, n, max_leaves));
    leaves *= static_cast<std::uint64_t>(d);
  }

  OracleReport report;
  report.level_counts.assign(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t depth = 0; depth <= n; ++depth) {
    std::vector<Value> prefix(static_cast<std::size_t>(depth), 0);
    std::uint64_t consistent = 0;
    do {
      if (is_consistent(instance, prefix)) {
        ++consistent;
        if (depth == n) report.solutions.push_back(prefix);
      }
    } while (advance(prefix, d));
    report.level_counts[static_cast<std::size_t>(depth)] = consistent;
  }

  report.node_count = 1;
  for (std::int64_t i = 0; i < n; ++i)
    report.node_count += static_cast<std::uint64_t>(d) * report.level_counts[static_cast<std::size_t>(i)];
  return report;
}

Agreement compare(const OracleReport& report, const SearchStats& stats) {
  Agreement agreement;
  agreement.levels = report.level_counts == stats.levels;
  agreement.nodes = report.node_count == stats.nodes;
  agreement.solution_count = report.solutions.size() == stats.solution_count;
  agreement.solutions = stats.solutions ? *stats.solutions == report.solutions
                                        : agreement.solution_count;
  return agreement;
}

double empirical_g(std::int64_t n, std::int64_t d, std::int64_t k, std::int64_t q, std::int64_t i,
                   std::uint64_t samples, SeedSpec seed, const std::vector<Value>& prefix) {
  const Params params = Params::validate(n, d, k, 1, q);
  if (i < 0 || i > n - 1)
    throw Error(ErrorKind::OutOfRange, fmt::format("level {} outside [0, {}]", i, n - 1));
  if (samples == 0) throw Error(ErrorKind::OutOfRange, "samples must be positive");
  std::vector<Value> assignment = prefix;
  if (assignment.empty()) assignment.assign(static_cast<std::size_t>(i), 0);
  if (assignment.size() != static_cast<std::size_t>(i))
    throw Error(ErrorKind::OutOfRange, "prefix length must equal the level");

  Rng rng(seed, Lane::Oracle);
  std::uint64_t satisfiable = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    ConstraintSpec c{sample_scope(n, k, rng), sample_incompatible(d, k, q, rng)};
    if (!is_violated(c, assignment, params.d())) ++satisfiable;
  }
  return static_cast<double>(satisfiable) / static_cast<double>(samples);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (std::int64_t j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;
  }
  return result;
}

Rational exact_g_combinatorial(std::int64_t n, std::int64_t k, const Rational& p, std::int64_t i) {
  if (n > 30) throw Error(ErrorKind::SizeGuard, "exact binomial oracle is limited to n <= 30");
  if (i < 0 || i > n - 1)
    throw Error(ErrorKind::OutOfRange, fmt::format("level {} outside [0, {}]", i, n - 1));
  return Rational(1) - p * Rational(binomial(i, k), binomial(n, k));
}

Rational exact_expected_nodes(const Params& params) {
  require_strict(params);
  const Rational p(BigInt(params.q()), BigInt(params.tuple_count()));
  const BigInt d = params.d();
  Rational sum = 0;
  BigInt d_power = 1;
  for (std::int64_t i = 0; i < params.n(); ++i) {
    const Rational g = exact_g_combinatorial(params.n(), params.k(), p, i);
    Rational g_power = 1;
    for (std::int64_t j = 0; j < params.t(); ++j) g_power *= g;
    sum += Rational(d_power) * g_power;
    d_power *= d;
  }
  return Rational(1) + Rational(d) * sum;
}

double log_exact_expected_nodes_hp(const Params& params) {
  const Rational value = exact_expected_nodes(params);
  const HighPrecision num(boost::multiprecision::numerator(value));
  const HighPrecision den(boost::multiprecision::denominator(value));
  return static_cast<double>(log(num) - log(den));
}

std::vector<CheckResult> run_verification(std::uint64_t seed, std::uint64_t instances,
                                          std::uint64_t g_samples) {
  std::vector<CheckResult> results;

  {
    // Shapes cycle over n in [2, 6], d in {2, 3}, k in {2, 3}, strict q.
    Rng shape_rng(SeedSpec{seed, 0}, Lane::Oracle);
    std::uint64_t mismatches = 0;
    for (std::uint64_t j = 0; j < instances; ++j) {
      const std::int64_t d = 2 + static_cast<std::int64_t>(shape_rng.below(2));
      const std::int64_t k = 2 + static_cast<std::int64_t>(shape_rng.below(2));
      const std::int64_t n = k + static_cast<std::int64_t>(shape_rng.below(static_cast<std::uint64_t>(7 - k)));
      const std::int64_t q = 1 + static_cast<std::int64_t>(shape_rng.below(static_cast<std::uint64_t>(d - 1)));
      const std::int64_t t = static_cast<std::int64_t>(shape_rng.below(static_cast<std::uint64_t>(3 * n + 1)));
      const Instance instance = sample_instance(Params::validate(n, d, k, t, q), SeedSpec{seed, j + 1});
      if (!compare(brute_force(instance), solve_all(instance, true)).all()) ++mismatches;
    }
    results.push_back({"backtracker matches brute force", mismatches == 0,
                       fmt::format("{} instances, {} mismatches", instances, mismatches)});
  }

  {
    std::uint64_t mismatches = 0;
    std::uint64_t checked = 0;
    for (std::int64_t n = 2; n <= 10; ++n)
      for (std::int64_t k = 2; k <= std::min<std::int64_t>(3, n); ++k)
        for (std::int64_t d = 2; d <= 4; ++d)
          for (std::int64_t q = 1; q < d; ++q) {
            const Params params = Params::validate(n, d, k, 1, q);
            const Rational p(BigInt(q), BigInt(params.tuple_count()));
            for (std::int64_t i = 0; i < n; ++i, ++checked)
              if (analytics::g_exact(i, params) != exact_g_combinatorial(n, k, p, i)) ++mismatches;
          }
    results.push_back({"g(i) equals the binomial form exactly", mismatches == 0,
                       fmt::format("{} levels, {} mismatches", checked, mismatches)});
  }

  {
    struct Spot {
      std::int64_t n, d, k, q, i;
    };
    const Spot spots[] = {{10, 3, 2, 2, 5}, {10, 3, 2, 2, 9}, {8, 2, 3, 1, 6}};
    for (const Spot& s : spots) {
      const Params params = Params::validate(s.n, s.d, s.k, 1, s.q);
      const double expected = static_cast<double>(analytics::g_exact(s.i, params));
      const double observed = empirical_g(s.n, s.d, s.k, s.q, s.i, g_samples, SeedSpec{seed, 7});
      const double se = std::sqrt(expected * (1 - expected) / static_cast<double>(g_samples));
      const double z = se > 0 ? (observed - expected) / se : 0.0;
      results.push_back({fmt::format("empirical g(i) n={} d={} k={} q={} i={}", s.n, s.d, s.k, s.q, s.i),
                         std::abs(z) <= 4.0,
                         fmt::format("observed {:.6f}, exact {:.6f}, z = {:+.2f}", observed, expected, z)});
    }
  }

  {
    const Params params = Params::validate(10, 3, 2, 10, 2);
    const double fast = analytics::log_exact_expected_nodes(params);
    const double exact = log_exact_expected_nodes_hp(params);
    const double rel = std::abs(fast - exact) / std::abs(exact);
    results.push_back({"log expected nodes matches exact rational sum", rel <= 1e-12,
                       fmt::format("log-sum-exp {:.15g}, exact {:.15g}", fast, exact)});
  }

  {
    const Params params = Params::validate(12, 3, 3, 20, 2);
    const bool same = to_text(sample_instance(params, SeedSpec{seed, 99})) ==
                      to_text(sample_instance(params, SeedSpec{seed, 99}));
    results.push_back({"generation is deterministic per seed", same,
                       fmt::format("two draws of n={} d={} k={} t={} q={} {}", params.n(), params.d(),
                                   params.k(), params.t(), params.q(), same ? "identical" : "differ")});
  }
  return results;
}

}  // namespace gbcsp::oracle
