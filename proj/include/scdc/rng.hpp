#pragma once

#include <cstdint>
#include <random>

namespace scdc {

// Seedable portable generator for all randomized batteries. mt19937_64 has a
// standardized sequence; uniforms are derived from the raw 64-bit output
// instead of std::uniform_real_distribution (whose mapping is
// implementation-defined), so reports replay bit-identically across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace scdc
