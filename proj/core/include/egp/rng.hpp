#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace egp {

// Deterministic, platform-independent RNG. Streams are derived from a
// (seed, purpose, index...) key so that samplers, feature initializers and
// training steps each own an independent substream that can be reproduced
// without carrying mutable generator state around.
//
// Core generator: xoshiro256** seeded through splitmix64. All distribution
// transforms are implemented here (never via std::*_distribution, whose
// output is not portable across standard libraries).

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  Rng() : Rng(0) {}

  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  // Derive an independent stream from a seed and up to four key words.
  static Rng stream(uint64_t seed, std::initializer_list<uint64_t> key) {
    uint64_t sm = seed;
    (void)splitmix64(sm);
    for (uint64_t k : key) {
      sm ^= splitmix64(sm) ^ (k * 0x9e3779b97f4a7c15ULL);
      (void)splitmix64(sm);
    }
    return Rng(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Lemire's multiply-shift with rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    uint64_t lo = static_cast<uint64_t>(m);
    if (lo < n) {
      uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller (no cached spare, keeps the state trivial).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Gamma(shape, scale) via Marsaglia-Tsang, shape boost for shape < 1.
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0, scale) * std::pow(u <= 0.0 ? 1e-300 : u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
  }

  // Poisson via Knuth's product method; fine for the desk-scale rates here.
  uint64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    double p = 1.0;
    uint64_t k = 0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  // Negative binomial with given mean/stddev via the gamma-Poisson mixture.
  // Falls back to plain Poisson when the variance does not exceed the mean.
  uint64_t neg_binomial(double mean, double stddev) {
    const double var = stddev * stddev;
    if (var <= mean || mean <= 0.0) return poisson(mean);
    const double r = mean * mean / (var - mean);
    return poisson(gamma(r, mean / r));
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Fixed stream purposes so every consumer draws from a distinct substream.
namespace rng_purpose {
inline constexpr uint64_t kFeatures = 1;
inline constexpr uint64_t kWalkQuery = 2;
inline constexpr uint64_t kWalkKey = 3;
inline constexpr uint64_t kBatchNodes = 4;
inline constexpr uint64_t kEdgeBatch = 5;
inline constexpr uint64_t kWalkEdge = 6;
inline constexpr uint64_t kQueueWarmup = 7;
inline constexpr uint64_t kParamInit = 8;
inline constexpr uint64_t kEmbed = 9;
inline constexpr uint64_t kSplit = 10;
inline constexpr uint64_t kHeadTrain = 11;
inline constexpr uint64_t kSynthetic = 12;
inline constexpr uint64_t kEdgeHoldout = 13;
inline constexpr uint64_t kLinkEval = 14;
}  // namespace rng_purpose

}  // namespace egp
