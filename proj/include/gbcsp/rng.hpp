#pragma once

#include <cstdint>
#include <limits>

namespace gbcsp {

/// Identifies one trial's random stream: (master_seed, stream_index) fixes
/// every draw made for that trial.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Independent sub-streams of one trial.
enum class Lane : std::uint64_t { Instance = 0, Heuristic = 1, Oracle = 2 };

/// xoshiro256** seeded through SplitMix64 from (master_seed, stream_index,
/// lane). The algorithm, the seeding and the bounded-integer reduction are
/// all fixed here so that draws are identical on every platform; nothing is
/// delegated to <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(SeedSpec seed, Lane lane = Lane::Instance) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }
  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound); bound must be positive. Lemire's
  /// multiply-and-reject method.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::uint64_t s_[4];
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace gbcsp
