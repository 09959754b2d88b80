#pragma once

// Unit-constraint heuristic: serve arity-1 constraints first, otherwise set
// a random unset variable to a random value, and reduce the constraint set
// after every assignment. Sound but incomplete: it either produces a
// verified solution or gives up when an empty constraint appears.

#include <cstdint>
#include <optional>
#include <vector>

#include "gbcsp/model.hpp"
#include "gbcsp/rng.hpp"

namespace gbcsp {

/// A constraint in reduced form. Tuple position j refers to scope[j].
struct ReducedConstraint {
  std::vector<VarIndex> scope;
  std::vector<Tuple> incompatible;
};

enum class ReduceStatus { Ok, EmptyConstraint };

class UCState {
 public:
  /// Constraints must have non-empty scopes over [0, n) and non-empty
  /// incompatible sets.
  UCState(std::int64_t n, std::int64_t d, std::vector<ReducedConstraint> constraints);
  static UCState from_instance(const Instance& instance);

  /// Assigns var <- value and reduces every live constraint on var: it is
  /// removed when value occurs in none of its incompatible tuples at var's
  /// position; otherwise only the tuples carrying value there survive, var
  /// is projected out and duplicates are merged. Returns EmptyConstraint
  /// when some constraint loses its last variable while still holding a
  /// tuple. Precondition: var is unset.
  ReduceStatus assign(VarIndex var, Value value);

  /// Ids of live arity-1 constraints (C_1).
  const std::vector<std::size_t>& unit_pool() const noexcept { return unit_pool_; }
  const std::vector<VarIndex>& unset_variables() const noexcept { return unset_; }

  /// Values of the unit's variable that satisfy it, ascending.
  std::vector<Value> allowed_values(std::size_t unit_id) const;

  const ReducedConstraint& constraint(std::size_t id) const { return constraints_.at(id); }
  bool is_live(std::size_t id) const { return alive_.at(id); }
  std::vector<ReducedConstraint> live_constraints() const;
  std::size_t live_count() const noexcept { return live_count_; }
  bool all_removed() const noexcept { return live_count_ == 0; }

  bool is_assigned(VarIndex var) const { return values_.at(static_cast<std::size_t>(var)) >= 0; }
  /// Current values; -1 marks unset variables.
  const std::vector<Value>& values() const noexcept { return values_; }

  std::int64_t domain_size() const noexcept { return d_; }

 private:
  void remove(std::size_t id);
  void pool_insert(std::size_t id);
  void pool_erase(std::size_t id);

  std::int64_t d_;
  std::vector<ReducedConstraint> constraints_;
  std::vector<bool> alive_;
  std::size_t live_count_ = 0;
  std::vector<std::vector<std::size_t>> occurrences_;
  std::vector<std::size_t> unit_pool_;
  std::vector<std::ptrdiff_t> pool_position_;
  std::vector<VarIndex> unset_;
  std::vector<std::ptrdiff_t> unset_position_;
  std::vector<Value> values_;
};

enum class UCTag { SolutionFound, Unknown };

struct UCOutcome {
  UCTag tag = UCTag::Unknown;
  /// Full assignment, present iff tag == SolutionFound.
  std::optional<Tuple> assignment;
  /// Variables assigned before termination (excluding the final random fill).
  std::int64_t steps = 0;
};

/// Runs the heuristic with randomness from the Heuristic lane of `seed`.
/// Rejects non-strict instances. A SolutionFound assignment has been checked
/// against the original constraints.
UCOutcome run_uc(const Instance& instance, SeedSpec seed);

/// Fraction of trials (fresh instance from stream i, fresh heuristic
/// randomness from the same stream's Heuristic lane) that end SolutionFound.
double uc_success_rate(const Params& params, std::uint64_t trials, std::uint64_t master_seed,
                       unsigned threads = 0);

}  // namespace gbcsp
