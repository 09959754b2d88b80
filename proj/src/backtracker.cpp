#include "gbcsp/backtracker.hpp"

#include <algorithm>

namespace gbcsp {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorKind::CounterOverflow, "search-tree node count exceeds 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorKind::CounterOverflow, "search-tree node count exceeds 64 bits");
  return out;
}

// A constraint compiled for the completed-scope check: the tuple on its
// scope is ranked and looked up among the sorted incompatible ranks.
struct CompiledConstraint {
  std::vector<VarIndex> scope;
  std::vector<std::uint64_t> ranks;
};

class Search {
 public:
  Search(const Instance& instance, const SolveOptions& options)
      : instance_(instance),
        options_(options),
        n_(instance.params().n()),
        d_(instance.params().d()),
        incremental_(instance.params().strict() && !options.naive_checks),
        assignment_(static_cast<std::size_t>(n_)) {
    stats_.levels.assign(static_cast<std::size_t>(n_ + 1), 0);
    if (options_.collect) stats_.solutions.emplace();
    if (incremental_) {
      // Bucket by the last variable of the scope: a constraint can only be
      // violated once its whole scope is assigned (q < d).
      completed_at_.resize(static_cast<std::size_t>(n_));
      for (const ConstraintSpec& c : instance.constraints()) {
        CompiledConstraint compiled{c.scope, {}};
        for (const Tuple& tuple : c.incompatible) compiled.ranks.push_back(tuple_rank(tuple, d_));
        std::sort(compiled.ranks.begin(), compiled.ranks.end());
        completed_at_[static_cast<std::size_t>(c.max_variable())].push_back(std::move(compiled));
      }
    }
  }

  SearchStats run() {
    stats_.nodes = 1;
    if (consistent(0)) descend(0);
    stats_.solution_count = stats_.levels[static_cast<std::size_t>(n_)];
    return std::move(stats_);
  }

 private:
  bool consistent(std::int64_t depth) const {
    if (!incremental_) {
      return is_consistent(instance_,
                           PartialAssignment(assignment_.data(), static_cast<std::size_t>(depth)));
    }
    if (depth == 0) return true;
    for (const CompiledConstraint& c : completed_at_[static_cast<std::size_t>(depth - 1)]) {
      std::uint64_t rank = 0;
      for (VarIndex v : c.scope)
        rank = rank * static_cast<std::uint64_t>(d_) +
               static_cast<std::uint64_t>(assignment_[static_cast<std::size_t>(v)]);
      if (std::binary_search(c.ranks.begin(), c.ranks.end(), rank)) return false;
    }
    return true;
  }

  // Called on a consistent node at the given depth.
  void descend(std::int64_t depth) {
    auto& count = stats_.levels[static_cast<std::size_t>(depth)];
    count = checked_add(count, 1);
    if (depth == n_) {
      if (stats_.solutions) stats_.solutions->push_back(assignment_);
      return;
    }
    stats_.nodes = checked_add(stats_.nodes, static_cast<std::uint64_t>(d_));
    for (std::int64_t step = 0; step < d_; ++step) {
      const std::int64_t value = options_.reverse_values ? d_ - 1 - step : step;
      assignment_[static_cast<std::size_t>(depth)] = static_cast<Value>(value);
      if (consistent(depth + 1)) descend(depth + 1);
    }
  }

  const Instance& instance_;
  SolveOptions options_;
  std::int64_t n_;
  std::int64_t d_;
  bool incremental_;
  std::vector<std::vector<CompiledConstraint>> completed_at_;
  Tuple assignment_;
  SearchStats stats_;
};

}  // namespace

SearchStats solve_all(const Instance& instance, const SolveOptions& options) {
  SearchStats stats = Search(instance, options).run();
  if (stats.solutions && options.reverse_values)
    std::reverse(stats.solutions->begin(), stats.solutions->end());
  return stats;
}

SearchStats solve_all(const Instance& instance, bool collect) {
  SolveOptions options;
  options.collect = collect;
  return solve_all(instance, options);
}

std::vector<std::uint64_t> level_profile(const Instance& instance) {
  return solve_all(instance, false).levels;
}

std::uint64_t nodes_from_profile(const std::vector<std::uint64_t>& levels, std::int64_t d) {
  std::uint64_t nodes = 1;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    nodes = checked_add(nodes, checked_mul(static_cast<std::uint64_t>(d), levels[i]));
  return nodes;
}

}  // namespace gbcsp
