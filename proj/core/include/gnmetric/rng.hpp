#pragma once

#include <cstdint>
#include <string_view>

namespace gnmetric {

namespace detail {
// splitmix64 finalizer; bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

/// Counter-based deterministic generator: output i is a pure function of
/// (seed, i), so streams are reproducible and independent draws can be
/// reasoned about positionally.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    return detail::mix64(seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Unbiased uniform in [0, bound), bound > 0. Uses rejection sampling,
  /// so a draw may consume more than one counter step.
  std::size_t next_index(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t threshold = (0 - b) % b;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return static_cast<std::size_t>(r % b);
    }
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Labeled child-seed derivation: a fixed hash of (parent, label), so each
/// subcomponent gets its own stream and adding one consumer does not
/// perturb another's samples.
inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return detail::mix64(parent ^ detail::mix64(h));
}

}  // namespace gnmetric
