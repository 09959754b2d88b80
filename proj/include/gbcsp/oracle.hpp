#pragma once

// Ground truth at tiny scale. Nothing here shares code with the backtracker
// or with the analytic formulas: solutions and level counts come from
// enumerating every prefix with the naive violation test, and g(i) from
// exact binomial coefficients.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbcsp/model.hpp"
#include "gbcsp/rational.hpp"
#include "gbcsp/rng.hpp"

namespace gbcsp {
struct SearchStats;
}

namespace gbcsp::oracle {

inline constexpr std::uint64_t kMaxLeaves = 10'000'000;

struct OracleReport {
  /// All satisfying full assignments, lexicographic.
  std::vector<Tuple> solutions;
  /// c_0..c_n.
  std::vector<std::uint64_t> level_counts;
  /// 1 + sum_{i<n} d * c_i.
  std::uint64_t node_count = 0;
};

struct Agreement {
  bool solutions = false;
  bool levels = false;
  bool nodes = false;
  bool solution_count = false;

  bool all() const noexcept { return solutions && levels && nodes && solution_count; }
};

/// Enumerates all d^i prefixes at every level i. Throws Error{SizeGuard}
/// when d^n exceeds max_leaves.
OracleReport brute_force(const Instance& instance, std::uint64_t max_leaves = kMaxLeaves);

/// Solutions are compared only when stats carries them.
Agreement compare(const OracleReport& report, const SearchStats& stats);

/// Monte Carlo estimate of g(i): the fraction of sampled constraints that are
/// not violated once variables 0..i-1 hold `prefix` (all zeros when empty).
double empirical_g(std::int64_t n, std::int64_t d, std::int64_t k, std::int64_t q, std::int64_t i,
                   std::uint64_t samples, SeedSpec seed, const std::vector<Value>& prefix = {});

/// Binomial coefficient as an exact integer (0 when k > n).
BigInt binomial(std::int64_t n, std::int64_t k);

/// 1 - p * C(i, k) / C(n, k), exact; requires n <= 30 and 0 <= i <= n-1.
Rational exact_g_combinatorial(std::int64_t n, std::int64_t k, const Rational& p, std::int64_t i);

/// 1 + d * sum_{i<n} d^i g(i)^t as an exact rational, g from binomials.
Rational exact_expected_nodes(const Params& params);
/// ln of exact_expected_nodes, evaluated with 50 significant digits.
double log_exact_expected_nodes_hp(const Params& params);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle suite for the `verify` command: counting semantics over random
/// instances, g(i) exact and empirical, exact expected nodes, determinism.
std::vector<CheckResult> run_verification(std::uint64_t seed, std::uint64_t instances = 200,
                                          std::uint64_t g_samples = 200'000);

}  // namespace gbcsp::oracle
