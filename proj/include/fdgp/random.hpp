#pragma once

#include <cstdint>
#include <limits>

namespace fdgp {

/// SplitMix64 generator. Small state makes it cheap to spin up one stream per
/// network evaluation, which is how matching stays order-independent.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint32_t below(std::uint32_t bound) noexcept {
    // Lemire's nearly-divisionless rejection on the high 32 bits.
    std::uint64_t m = ((*this)() >> 32) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        m = ((*this)() >> 32) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  /// Uniform integer in [lo, hi].
  int between(int lo, int hi) noexcept {
    return lo + static_cast<int>(below(static_cast<std::uint32_t>(hi - lo) + 1));
  }

  bool chance(double p) noexcept { return uniform() < p; }

  std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Counter-keyed substream: the same (base, key) always yields the same stream.
inline SplitMix64 substream(std::uint64_t base, std::uint64_t key) noexcept {
  return SplitMix64(SplitMix64::mix(base ^ SplitMix64::mix(key + 0x632BE59BD9B4E019ULL)));
}

}  // namespace fdgp
