#pragma once

#include <cstdint>

namespace partcount {

// SplitMix64 (Steele, Lea and Flood, "Fast splittable pseudorandom number
// generators"). Pinned here, rather than using <random>, so that benchmark
// instance streams are reproducible across compilers and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [1, upper] by modulo reduction; bias is < 2^-31 for the
  /// instance ranges used here (upper < 2^33).
  std::uint64_t next_in(std::uint64_t upper) { return 1 + next() % upper; }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// One SplitMix64 output step; used to derive independent sub-streams.
inline std::uint64_t splitmix64_mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace partcount
