#pragma once

#include <vector>

#include "gbcsp/model.hpp"
#include "gbcsp/rng.hpp"

namespace gbcsp {

/// k distinct variables of [0, n), every k-subset equally likely. Partial
/// Fisher-Yates on a virtual identity array; the result keeps draw order.
std::vector<VarIndex> sample_scope(std::int64_t n, std::int64_t k, Rng& rng);

/// q distinct tuples out of the d^k tuples, uniform over q-subsets (Floyd's
/// algorithm on tuple ranks). Returned sorted lexicographically.
std::vector<Tuple> sample_incompatible(std::int64_t d, std::int64_t k, std::int64_t q, Rng& rng);

/// t i.i.d. constraints (scope, then incompatible set), drawn from the
/// Instance lane of the seed's stream. Duplicates are kept.
Instance sample_instance(const Params& params, SeedSpec seed);

}  // namespace gbcsp
