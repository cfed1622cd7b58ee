#pragma once

#include <cstdint>

#include "twistfreq/types.hpp"

namespace tf {

/// Deterministic 64-bit generator (splitmix-seeded xorshift) so seeded runs
/// are reproducible across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x106689d45497fdb5ull;
  }

  std::uint64_t next() {
    std::uint64_t x = state_;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return state_ = x;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [-1, 1).
  double sym() { return 2.0 * uniform() - 1.0; }
  int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  cplx unit_disc() {
    while (true) {
      const double x = sym(), y = sym();
      if (x * x + y * y <= 1.0) return {x, y};
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace tf
