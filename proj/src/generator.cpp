#include "gbcsp/generator.hpp"

#include <algorithm>
#include <unordered_set>

namespace gbcsp {

std::vector<VarIndex> sample_scope(std::int64_t n, std::int64_t k, Rng& rng) {
  // Sparse Fisher-Yates: only displaced slots of the identity array are stored.
  std::vector<std::pair<VarIndex, VarIndex>> displaced;
  auto slot = [&](VarIndex i) {
    for (const auto& [index, value] : displaced)
      if (index == i) return value;
    return i;
  };
  auto set_slot = [&](VarIndex i, VarIndex value) {
    for (auto& entry : displaced)
      if (entry.first == i) {
        entry.second = value;
        return;
      }
    displaced.emplace_back(i, value);
  };

  std::vector<VarIndex> scope;
  scope.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    const auto here = static_cast<VarIndex>(i);
    const auto pick = static_cast<VarIndex>(i + static_cast<std::int64_t>(rng.below(
                                                     static_cast<std::uint64_t>(n - i))));
    const VarIndex chosen = slot(pick);
    set_slot(pick, slot(here));
    set_slot(here, chosen);
    scope.push_back(chosen);
  }
  return scope;
}

std::vector<Tuple> sample_incompatible(std::int64_t d, std::int64_t k, std::int64_t q, Rng& rng) {
  std::uint64_t total = 1;
  for (std::int64_t j = 0; j < k; ++j) total *= static_cast<std::uint64_t>(d);

  std::vector<std::uint64_t> ranks;
  ranks.reserve(static_cast<std::size_t>(q));
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t j = total - static_cast<std::uint64_t>(q); j < total; ++j) {
    const std::uint64_t candidate = rng.below(j + 1);
    const std::uint64_t rank = seen.contains(candidate) ? j : candidate;
    seen.insert(rank);
    ranks.push_back(rank);
  }
  // Rank order is lexicographic tuple order.
  std::sort(ranks.begin(), ranks.end());

  std::vector<Tuple> tuples;
  tuples.reserve(ranks.size());
  for (std::uint64_t rank : ranks) tuples.push_back(tuple_from_rank(rank, d, k));
  return tuples;
}

Instance sample_instance(const Params& params, SeedSpec seed) {
  Rng rng(seed, Lane::Instance);
  std::vector<ConstraintSpec> constraints;
  constraints.reserve(static_cast<std::size_t>(params.t()));
  for (std::int64_t c = 0; c < params.t(); ++c) {
    auto scope = sample_scope(params.n(), params.k(), rng);
    auto incompatible = sample_incompatible(params.d(), params.k(), params.q(), rng);
    constraints.push_back(ConstraintSpec{std::move(scope), std::move(incompatible)});
  }
  return Instance(params, std::move(constraints));
}

}  // namespace gbcsp
