#pragma once

#include <cstdint>

namespace quotlab {

// SplitMix64: tiny deterministic generator used for seeded sampling.
// Fixed here (rather than std::mt19937) so that seeded outputs are
// bit-identical across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [lo, hi] (inclusive); span must be small.
  long range(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next() % span);
  }

 private:
  std::uint64_t state_;
};

}  // namespace quotlab
