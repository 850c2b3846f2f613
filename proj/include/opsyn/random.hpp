#pragma once

#include <cstddef>
#include <cstdint>

namespace opsyn {

/// SplitMix64. Small, seedable and splittable; outputs are stable across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n must be positive.
  std::size_t uniform(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  bool coin(double p_true) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p_true; }

  /// Independent child stream.
  SplitMix64 split() { return SplitMix64(next() ^ 0x6A09E667F3BCC909ULL); }

 private:
  std::uint64_t state_;
};

}  // namespace opsyn
