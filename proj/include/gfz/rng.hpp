#pragma once

#include <cstdint>

namespace gfz {

/// SplitMix64: counter-based generator with a 64-bit seed. Every draw is a
/// pure function of (seed, counter), so derived streams are reproducible
/// bit-for-bit regardless of evaluation order.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be > 0.
  uint64_t next_below(uint64_t bound) {
    // Rejection-free modulo is fine here: bound is tiny vs 2^64.
    return next_u64() % bound;
  }

 private:
  uint64_t state_;
};

/// Mix independent stream identifiers into a fresh 64-bit seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  SplitMix64 rng(seed ^ (a * 0xD1342543DE82EF95ULL) ^ (b * 0xAF251AF3B0F025B5ULL));
  rng.next_u64();
  return rng.next_u64();
}

}  // namespace gfz
