#pragma once

#include <cstdint>

namespace rit {

// SplitMix64: 64-bit counter advanced by a fixed odd constant, output pushed
// through an avalanching finalizer.  Seeding is trivial (any 64-bit value,
// no warmup) and distinct seeds give de-correlated streams, which the
// per-run seed derivation below relies on.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1): both endpoints excluded, safe to hand to log().
  double uniform01_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Seed for replica `index` of a multi-run estimate.  Hashing (base, index)
// through the finalizer makes replicas order-insensitive: run k sees the
// same stream whether runs execute serially, in parallel, or alone.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace rit
