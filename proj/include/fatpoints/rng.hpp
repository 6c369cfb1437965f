#pragma once

#include <cstdint>

namespace fatpoints {

/// Deterministic 64-bit generator (splitmix64). Used everywhere randomness
/// is needed so that results are reproducible across platforms and standard
/// library versions; std::mt19937 + distributions would not be.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [lo, hi]. Modulo bias is irrelevant here; only
  /// determinism matters.
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace fatpoints
