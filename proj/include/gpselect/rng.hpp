#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace gpselect {

/// Deterministic random stream. All samplers are hand-rolled on top of
/// std::mt19937_64 so that a given seed yields the same values on every
/// platform; std::*_distribution is implementation-defined and would not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Uniform integer in [0, n). Rejection keeps the draw unbiased.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller. Two engine draws per sample, no
  /// cached spare, so the call sequence alone fixes the stream.
  double normal() {
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Zero-mean Gaussian with standard deviation `bound`/2, truncated at
  /// +-`bound`. Returns 0 when bound == 0.
  double truncated_noise(double bound) {
    if (bound < 0.0) throw std::invalid_argument("truncated_noise: bound must be >= 0");
    if (bound == 0.0) return 0.0;
    const double sd = 0.5 * bound;
    while (true) {
      const double z = sd * normal();
      if (std::abs(z) <= bound) return z;
    }
  }

  /// Derives an independent-looking child seed (splitmix64 finalizer over
  /// seed ^ stream).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gpselect
