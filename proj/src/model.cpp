#include "gbcsp/model.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

namespace gbcsp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ArityExceedsVariables: return "arity-exceeds-variables";
    case ErrorKind::DegenerateDomain: return "degenerate-domain";
    case ErrorKind::EmptyRelation: return "empty-relation";
    case ErrorKind::ZeroTightness: return "zero-tightness";
    case ErrorKind::ParameterTooLarge: return "parameter-too-large";
    case ErrorKind::InvalidConstraint: return "invalid-constraint";
    case ErrorKind::NonStrict: return "non-strict";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::RegimeMismatch: return "regime-mismatch";
    case ErrorKind::DegenerateDensity: return "degenerate-density";
    case ErrorKind::SizeGuard: return "size-guard";
    case ErrorKind::CounterOverflow: return "counter-overflow";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kMaxTupleCount = std::uint64_t{1} << 62;

}  // namespace

Params Params::validate(std::int64_t n, std::int64_t d, std::int64_t k, std::int64_t t,
                        std::int64_t q) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, fmt::format("n must be positive, got {}", n));
  if (n > std::numeric_limits<VarIndex>::max())
    throw Error(ErrorKind::ParameterTooLarge, fmt::format("n = {} is too large", n));
  if (d < 2) throw Error(ErrorKind::DegenerateDomain, fmt::format("d must be >= 2, got {}", d));
  if (k < 2) throw Error(ErrorKind::OutOfRange, fmt::format("k must be >= 2, got {}", k));
  if (k > n)
    throw Error(ErrorKind::ArityExceedsVariables, fmt::format("k = {} exceeds n = {}", k, n));
  if (t < 0) throw Error(ErrorKind::OutOfRange, fmt::format("t must be >= 0, got {}", t));
  if (d > std::numeric_limits<Value>::max())
    throw Error(ErrorKind::ParameterTooLarge, fmt::format("d = {} is too large", d));

  std::uint64_t count = 1;
  for (std::int64_t j = 0; j < k; ++j) {
    if (count > kMaxTupleCount / static_cast<std::uint64_t>(d))
      throw Error(ErrorKind::ParameterTooLarge, fmt::format("d^k = {}^{} is too large", d, k));
    count *= static_cast<std::uint64_t>(d);
  }
  if (q < 1) throw Error(ErrorKind::ZeroTightness, fmt::format("q must be >= 1, got {}", q));
  if (static_cast<std::uint64_t>(q) > count)
    throw Error(ErrorKind::EmptyRelation, fmt::format("q = {} exceeds d^k = {}", q, count));

  Params params;
  params.n_ = n;
  params.d_ = d;
  params.k_ = k;
  params.t_ = t;
  params.q_ = q;
  params.tuple_count_ = count;
  return params;
}

void require_strict(const Params& params) {
  if (!params.strict())
    throw Error(ErrorKind::NonStrict,
                fmt::format("q = {} must be below d = {} (p < 1/d^(k-1))", params.q(), params.d()));
}

std::uint64_t tuple_rank(std::span<const Value> tuple, std::int64_t d) noexcept {
  std::uint64_t rank = 0;
  for (Value v : tuple) rank = rank * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(v);
  return rank;
}

Tuple tuple_from_rank(std::uint64_t rank, std::int64_t d, std::int64_t k) {
  Tuple tuple(static_cast<std::size_t>(k));
  for (std::int64_t j = k - 1; j >= 0; --j) {
    tuple[static_cast<std::size_t>(j)] = static_cast<Value>(rank % static_cast<std::uint64_t>(d));
    rank /= static_cast<std::uint64_t>(d);
  }
  return tuple;
}

ConstraintSpec ConstraintSpec::make(std::vector<VarIndex> scope, std::vector<Tuple> incompatible,
                                    const Params& params) {
  const auto k = static_cast<std::size_t>(params.k());
  if (scope.size() != k)
    throw Error(ErrorKind::InvalidConstraint,
                fmt::format("scope has {} variables, expected k = {}", scope.size(), k));
  for (std::size_t a = 0; a < k; ++a) {
    if (scope[a] < 0 || scope[a] >= params.n())
      throw Error(ErrorKind::InvalidConstraint, fmt::format("scope variable {} outside [0, {})",
                                                            scope[a], params.n()));
    for (std::size_t b = 0; b < a; ++b)
      if (scope[a] == scope[b])
        throw Error(ErrorKind::InvalidConstraint,
                    fmt::format("scope repeats variable {}", scope[a]));
  }
  if (incompatible.size() != static_cast<std::size_t>(params.q()))
    throw Error(ErrorKind::InvalidConstraint,
                fmt::format("{} incompatible tuples, expected q = {}", incompatible.size(),
                            params.q()));
  for (const Tuple& tuple : incompatible) {
    if (tuple.size() != k)
      throw Error(ErrorKind::InvalidConstraint, "incompatible tuple has wrong length");
    for (Value v : tuple)
      if (v < 0 || v >= params.d())
        throw Error(ErrorKind::InvalidConstraint,
                    fmt::format("tuple value {} outside [0, {})", v, params.d()));
  }
  std::sort(incompatible.begin(), incompatible.end());
  if (std::adjacent_find(incompatible.begin(), incompatible.end()) != incompatible.end())
    throw Error(ErrorKind::InvalidConstraint, "incompatible tuples are not distinct");
  return ConstraintSpec{std::move(scope), std::move(incompatible)};
}

VarIndex ConstraintSpec::max_variable() const noexcept {
  return scope.empty() ? -1 : *std::max_element(scope.begin(), scope.end());
}

Instance::Instance(Params params, std::vector<ConstraintSpec> constraints)
    : params_(params), constraints_(std::move(constraints)) {
  if (constraints_.size() != static_cast<std::size_t>(params_.t()))
    throw Error(ErrorKind::InvalidConstraint,
                fmt::format("{} constraints, expected t = {}", constraints_.size(), params_.t()));
  for (auto& c : constraints_) c = ConstraintSpec::make(c.scope, c.incompatible, params_);
}

bool is_violated(const ConstraintSpec& c, PartialAssignment assignment, std::int64_t d) {
  const auto depth = static_cast<VarIndex>(assignment.size());
  std::uint64_t extensions = 1;  // d^(unassigned scope variables), saturating
  for (VarIndex v : c.scope) {
    if (v >= depth) {
      if (extensions > c.incompatible.size()) break;
      extensions *= static_cast<std::uint64_t>(d);
    }
  }
  if (extensions > c.incompatible.size()) return false;

  std::uint64_t blocked = 0;
  for (const Tuple& tuple : c.incompatible) {
    bool agrees = true;
    for (std::size_t j = 0; j < c.scope.size() && agrees; ++j) {
      const VarIndex v = c.scope[j];
      if (v < depth && assignment[static_cast<std::size_t>(v)] != tuple[j]) agrees = false;
    }
    if (agrees) ++blocked;
  }
  // Tuples are distinct, so the extensions are all blocked iff the count matches.
  return blocked == extensions;
}

bool is_consistent(const Instance& instance, PartialAssignment assignment) {
  const std::int64_t d = instance.params().d();
  return std::none_of(instance.constraints().begin(), instance.constraints().end(),
                      [&](const ConstraintSpec& c) { return is_violated(c, assignment, d); });
}

}  // namespace gbcsp
