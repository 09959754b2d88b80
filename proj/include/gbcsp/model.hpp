#pragma once

// Instance data model for Model GB random CSPs.
//
// Variables are 0-indexed: u_1..u_n in the usual 1-indexed notation map to
// indices 0..n-1. A partial assignment of depth i fixes the values of
// variables 0..i-1, in that order.

#include <cstdint>
#include <span>
#include <vector>

#include "gbcsp/error.hpp"

namespace gbcsp {

using Value = std::int32_t;
using VarIndex = std::int32_t;
using Tuple = std::vector<Value>;

/// Values of variables 0..depth-1.
using PartialAssignment = std::span<const Value>;

/// Validated instance parameters. The integer q (incompatible tuples per
/// constraint) is primary; the tightness p = q/d^k is derived from it.
class Params {
 public:
  /// Rejects structurally impossible parameter sets. Non-strict sets
  /// (q >= d) are accepted and flagged.
  static Params validate(std::int64_t n, std::int64_t d, std::int64_t k, std::int64_t t,
                         std::int64_t q);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t d() const noexcept { return d_; }
  std::int64_t k() const noexcept { return k_; }
  std::int64_t t() const noexcept { return t_; }
  std::int64_t q() const noexcept { return q_; }

  /// d^k, the number of value tuples on a k-scope.
  std::uint64_t tuple_count() const noexcept { return tuple_count_; }

  double p() const noexcept { return static_cast<double>(q_) / static_cast<double>(tuple_count_); }
  double r() const noexcept { return static_cast<double>(t_) / static_cast<double>(n_); }

  /// q < d, equivalently p < 1/d^(k-1). Required by every analytic formula.
  bool strict() const noexcept { return q_ < d_; }

  Params with_t(std::int64_t t) const { return validate(n_, d_, k_, t, q_); }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  Params() = default;

  std::int64_t n_ = 0;
  std::int64_t d_ = 0;
  std::int64_t k_ = 0;
  std::int64_t t_ = 0;
  std::int64_t q_ = 0;
  std::uint64_t tuple_count_ = 0;
};

/// Throws Error{NonStrict} unless params.strict().
void require_strict(const Params& params);

/// One k-ary constraint: an ordered scope and its sorted set of incompatible
/// tuples (tuple position j refers to scope[j]).
struct ConstraintSpec {
  std::vector<VarIndex> scope;
  std::vector<Tuple> incompatible;

  /// Sorts the incompatible set and checks the invariants against params.
  static ConstraintSpec make(std::vector<VarIndex> scope, std::vector<Tuple> incompatible,
                             const Params& params);

  VarIndex max_variable() const noexcept;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

class Instance {
 public:
  /// Requires exactly params.t() constraints, each valid against params.
  /// Duplicates across the list are legal.
  Instance(Params params, std::vector<ConstraintSpec> constraints);

  const Params& params() const noexcept { return params_; }
  const std::vector<ConstraintSpec>& constraints() const noexcept { return constraints_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Params params_;
  std::vector<ConstraintSpec> constraints_;
};

/// True iff every tuple on c.scope that agrees with the assignment on its
/// assigned variables is incompatible, i.e. c has no compatible extension.
bool is_violated(const ConstraintSpec& c, PartialAssignment assignment, std::int64_t d);

/// True iff no constraint of the instance is violated by the assignment.
bool is_consistent(const Instance& instance, PartialAssignment assignment);

/// Rank of a tuple in [0, d^k): base-d digits, scope position 0 most significant.
std::uint64_t tuple_rank(std::span<const Value> tuple, std::int64_t d) noexcept;
Tuple tuple_from_rank(std::uint64_t rank, std::int64_t d, std::int64_t k);

}  // namespace gbcsp
