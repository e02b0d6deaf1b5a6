#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cpzreach {

/// Seedable random source whose output is identical across standard libraries.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the standard);
/// the distributions are implemented here because the std:: ones are not.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(mix(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [-1, 1].
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  bool bernoulli(double p) { return uniform01() < p; }

  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller (one value per call; no caching keeps streams simple).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t index(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace cpzreach
