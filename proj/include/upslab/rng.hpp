#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace upslab {

/// splitmix64 step; used for seed derivation and hash-combining.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic sub-seed from a root seed plus stream labels
/// (trial index, sweep cell, ...). Order-sensitive.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t s = seed;
  (void)splitmix64(s);
  s ^= a;
  (void)splitmix64(s);
  s ^= b;
  (void)splitmix64(s);
  s ^= c;
  return splitmix64(s);
}

/// Seeded generator with platform-independent derived distributions.
/// std::uniform_int_distribution / std::normal_distribution are
/// implementation-defined, so bounded ints and gaussians are built here
/// from the raw (standardized) mt19937_64 stream.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound), bound >= 1. Masked rejection sampling (unbiased).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0};
    const int bits = 64 - std::countl_zero(bound - 1);
    mask >>= (64 - bits);
    for (;;) {
      const std::uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace upslab
