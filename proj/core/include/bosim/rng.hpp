#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace bosim {

/// Deterministic random stream with value semantics.
///
/// All variate transforms (uniform doubles, Gaussians, shuffles) are
/// implemented in this class rather than via std::*_distribution so that a
/// given (seed, index) pair produces the same byte stream on every standard
/// library implementation. Reproducibility of sample streams is part of the
/// library contract.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream for one sample of a run: mixes (seed, index) into an independent
  /// starting state so samples can be generated in any order or in parallel.
  static RngStream for_sample(std::uint64_t seed, std::uint64_t index);

  /// Raw 64 uniform bits.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n), unbiased (rejection sampling). n must be >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Independent standard normal pair via the Box-Muller transform.
  /// Returned as a complex number (real and imaginary parts are the two
  /// N(0,1) variates).
  std::complex<double> gaussian_pair();

  /// Uniformly random permutation of {0, .., n-1} (Fisher-Yates).
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace bosim
