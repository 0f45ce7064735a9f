#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace soc {

/// Seeded random stream. Every stochastic component owns one of these so
/// that runs are reproducible and repetitions stay independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32), 0x9e3779b9u};
    engine_.seed(seq);
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return uniform(0.0, 1.0); }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  /// True with probability p.
  bool chance(double p) { return uniform01() < p; }

  std::mt19937_64& engine() { return engine_; }

  /// Seed for an independent stream derived from a seed and a salt (used
  /// to give each map cell or repetition its own reproducible stream).
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix(seed ^ mix(salt + 0x9e3779b97f4a7c15ull));
  }

  static Rng derive(std::uint64_t seed, std::uint64_t salt) {
    return Rng(derive_seed(seed, salt));
  }

  /// splitmix64 finalizer; also handy for state fingerprints.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace soc
