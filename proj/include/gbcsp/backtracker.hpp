#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gbcsp/model.hpp"

namespace gbcsp {

/// Result of an all-solutions chronological backtracking run.
struct SearchStats {
  /// Search-tree nodes including the root: 1 + sum over i < n of d * levels[i].
  std::uint64_t nodes = 0;
  std::uint64_t solution_count = 0;
  /// levels[i] = number of consistent depth-i partial assignments, i = 0..n.
  std::vector<std::uint64_t> levels;
  /// Every solution in lexicographic order, when collection was requested.
  std::optional<std::vector<Tuple>> solutions;
};

struct SolveOptions {
  bool collect = false;
  /// Try values d-1..0 instead of 0..d-1. The node count must not change.
  bool reverse_values = false;
  /// Re-check every constraint with full is_violated semantics at every
  /// depth instead of the bucketed completed-scope check.
  bool naive_checks = false;
};

/// Static variable order 0..n-1. Each consistent node above the leaves is
/// extended by all d values, and every extension counts as a node whether
/// or not it turns out consistent. Throws Error{CounterOverflow} when the
/// node count would exceed 64 bits.
SearchStats solve_all(const Instance& instance, const SolveOptions& options = {});
SearchStats solve_all(const Instance& instance, bool collect);

/// c_0..c_n from the same traversal as solve_all.
std::vector<std::uint64_t> level_profile(const Instance& instance);

/// 1 + d * sum_{i<n} levels[i]; the node count implied by a level profile.
std::uint64_t nodes_from_profile(const std::vector<std::uint64_t>& levels, std::int64_t d);

}  // namespace gbcsp
