#pragma once
//
// Seeded random number generation for Monte Carlo trials.
//
// Every stochastic routine in the library takes an explicit Rng handle, and
// each trial owns its own stream, so runs are reproducible bit-for-bit and
// trials can execute concurrently without sharing state. Gaussian draws use
// a fixed Box-Muller layout (two uniforms per normal) so the stream
// consumption pattern never depends on call history.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "lrcc/types.hpp"

namespace lrcc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream seed for one trial: base seed XOR a hash of (sweep point, trial).
// Distinct (sweep, trial) pairs get distinct streams; the derivation is part
// of the output contract and is documented in every emitted sidecar.
inline std::uint64_t derive_trial_seed(std::uint64_t seed,
                                       std::uint64_t sweep_index,
                                       std::uint64_t trial_index) {
  return seed ^ splitmix64(splitmix64(sweep_index + 1) + trial_index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on (0, hi]; flips the half-open side so 0 is excluded.
  double uniform_positive(double hi) { return hi * (1.0 - uniform()); }

  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance = 1.0) {
    double s = std::sqrt(variance / 2.0);
    double re = s * normal();
    double im = s * normal();
    return {re, im};
  }

  CVec complex_normal_vector(int n, double variance = 1.0) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = complex_normal(variance);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lrcc
