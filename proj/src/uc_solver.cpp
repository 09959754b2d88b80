#include "gbcsp/uc_solver.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "gbcsp/generator.hpp"
#include "gbcsp/parallel.hpp"

namespace gbcsp {

UCState::UCState(std::int64_t n, std::int64_t d, std::vector<ReducedConstraint> constraints)
    : d_(d),
      constraints_(std::move(constraints)),
      alive_(constraints_.size(), true),
      live_count_(constraints_.size()),
      occurrences_(static_cast<std::size_t>(n)),
      pool_position_(constraints_.size(), -1),
      unset_position_(static_cast<std::size_t>(n)),
      values_(static_cast<std::size_t>(n), -1) {
  unset_.reserve(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) {
    unset_position_[static_cast<std::size_t>(v)] = static_cast<std::ptrdiff_t>(v);
    unset_.push_back(static_cast<VarIndex>(v));
  }
  for (std::size_t id = 0; id < constraints_.size(); ++id) {
    const ReducedConstraint& c = constraints_[id];
    if (c.scope.empty() || c.incompatible.empty())
      throw Error(ErrorKind::InvalidConstraint, "reduced constraint must be non-empty");
    for (VarIndex v : c.scope) {
      if (v < 0 || v >= n)
        throw Error(ErrorKind::InvalidConstraint, fmt::format("variable {} outside [0, {})", v, n));
      occurrences_[static_cast<std::size_t>(v)].push_back(id);
    }
    if (c.scope.size() == 1) pool_insert(id);
  }
}

UCState UCState::from_instance(const Instance& instance) {
  std::vector<ReducedConstraint> reduced;
  reduced.reserve(instance.constraints().size());
  for (const ConstraintSpec& c : instance.constraints())
    reduced.push_back(ReducedConstraint{c.scope, c.incompatible});
  return UCState(instance.params().n(), instance.params().d(), std::move(reduced));
}

void UCState::pool_insert(std::size_t id) {
  if (pool_position_[id] >= 0) return;
  pool_position_[id] = static_cast<std::ptrdiff_t>(unit_pool_.size());
  unit_pool_.push_back(id);
}

void UCState::pool_erase(std::size_t id) {
  const std::ptrdiff_t at = pool_position_[id];
  if (at < 0) return;
  const std::size_t last = unit_pool_.back();
  unit_pool_[static_cast<std::size_t>(at)] = last;
  pool_position_[last] = at;
  unit_pool_.pop_back();
  pool_position_[id] = -1;
}

void UCState::remove(std::size_t id) {
  if (!alive_[id]) return;
  alive_[id] = false;
  --live_count_;
  pool_erase(id);
}

ReduceStatus UCState::assign(VarIndex var, Value value) {
  const auto slot = static_cast<std::size_t>(var);
  if (values_.at(slot) >= 0)
    throw std::logic_error(fmt::format("variable {} is already assigned", var));
  values_[slot] = value;

  const std::ptrdiff_t at = unset_position_[slot];
  const VarIndex last = unset_.back();
  unset_[static_cast<std::size_t>(at)] = last;
  unset_position_[static_cast<std::size_t>(last)] = at;
  unset_.pop_back();
  unset_position_[slot] = -1;

  ReduceStatus status = ReduceStatus::Ok;
  for (std::size_t id : occurrences_[slot]) {
    if (!alive_[id]) continue;
    ReducedConstraint& c = constraints_[id];
    const auto pos = static_cast<std::size_t>(
        std::find(c.scope.begin(), c.scope.end(), var) - c.scope.begin());

    const bool occurs = std::any_of(c.incompatible.begin(), c.incompatible.end(),
                                    [&](const Tuple& tuple) { return tuple[pos] == value; });
    if (!occurs) {
      remove(id);
      continue;
    }
    std::erase_if(c.incompatible, [&](const Tuple& tuple) { return tuple[pos] != value; });
    for (Tuple& tuple : c.incompatible)
      tuple.erase(tuple.begin() + static_cast<std::ptrdiff_t>(pos));
    c.scope.erase(c.scope.begin() + static_cast<std::ptrdiff_t>(pos));
    std::sort(c.incompatible.begin(), c.incompatible.end());
    c.incompatible.erase(std::unique(c.incompatible.begin(), c.incompatible.end()),
                         c.incompatible.end());

    if (c.scope.size() == 1) {
      pool_insert(id);
    } else if (c.scope.empty()) {
      pool_erase(id);
      status = ReduceStatus::EmptyConstraint;
    }
  }
  occurrences_[slot].clear();
  return status;
}

std::vector<Value> UCState::allowed_values(std::size_t unit_id) const {
  const ReducedConstraint& c = constraints_.at(unit_id);
  if (c.scope.size() != 1) throw std::logic_error("allowed_values on a non-unit constraint");
  std::vector<bool> blocked(static_cast<std::size_t>(d_), false);
  for (const Tuple& tuple : c.incompatible) blocked[static_cast<std::size_t>(tuple[0])] = true;
  std::vector<Value> allowed;
  for (std::int64_t v = 0; v < d_; ++v)
    if (!blocked[static_cast<std::size_t>(v)]) allowed.push_back(static_cast<Value>(v));
  return allowed;
}

std::vector<ReducedConstraint> UCState::live_constraints() const {
  std::vector<ReducedConstraint> out;
  for (std::size_t id = 0; id < constraints_.size(); ++id)
    if (alive_[id]) out.push_back(constraints_[id]);
  return out;
}

UCOutcome run_uc(const Instance& instance, SeedSpec seed) {
  require_strict(instance.params());
  const std::int64_t d = instance.params().d();
  UCState state = UCState::from_instance(instance);
  Rng rng(seed, Lane::Heuristic);

  UCOutcome outcome;
  while (!state.all_removed()) {
    if (state.unset_variables().empty())
      throw std::logic_error("live constraints remain with every variable assigned");
    VarIndex var;
    Value value;
    const auto& pool = state.unit_pool();
    if (!pool.empty()) {
      const std::size_t unit = pool[rng.below(pool.size())];
      var = state.constraint(unit).scope.front();
      // q < d leaves at least d - q satisfying values.
      const std::vector<Value> allowed = state.allowed_values(unit);
      value = allowed[rng.below(allowed.size())];
    } else {
      const auto& unset = state.unset_variables();
      var = unset[rng.below(unset.size())];
      value = static_cast<Value>(rng.below(static_cast<std::uint64_t>(d)));
    }
    ++outcome.steps;
    if (state.assign(var, value) == ReduceStatus::EmptyConstraint) return outcome;
  }

  Tuple full = state.values();
  for (Value& v : full)
    if (v < 0) v = static_cast<Value>(rng.below(static_cast<std::uint64_t>(d)));
  if (!is_consistent(instance, full))
    throw std::logic_error("heuristic produced an assignment that violates the instance");
  outcome.tag = UCTag::SolutionFound;
  outcome.assignment = std::move(full);
  return outcome;
}

double uc_success_rate(const Params& params, std::uint64_t trials, std::uint64_t master_seed,
                       unsigned threads) {
  require_strict(params);
  if (trials == 0) throw Error(ErrorKind::OutOfRange, "trials must be positive");
  std::vector<char> found(trials, 0);
  parallel_for_index(trials, threads, [&](std::size_t i) {
    const SeedSpec seed{master_seed, i};
    const Instance instance = sample_instance(params, seed);
    found[i] = run_uc(instance, seed).tag == UCTag::SolutionFound ? 1 : 0;
  });
  const auto successes = std::count(found.begin(), found.end(), 1);
  return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace gbcsp
