#pragma once

#include <cstdint>
#include <random>

#include "blocklab/types.hpp"

namespace blocklab {

// Seeded random stream. Wraps the standard mt19937_64 engine but draws bounded
// integers itself: the engine's output sequence is pinned by the standard, the
// library distributions are not, and every simulation result here must be
// reproducible from (config, seed) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [lo, hi], both ends included. Rejection sampling keeps it unbiased.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ContractViolation("uniform with empty range");
    std::uint64_t span = (std::uint64_t)(hi - lo) + 1;
    if (span == 0) return (std::int64_t)engine_();  // full 64-bit range
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + (std::int64_t)(draw % span);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  bool chance_milli(int per_mille) { return uniform(0, 999) < per_mille; }

  // Derives an independent substream seed; used to pair draws across runs
  // that consume different amounts of randomness (splitmix64 finalizer).
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blocklab
