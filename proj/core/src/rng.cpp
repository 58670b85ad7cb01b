#include "bosim/rng.hpp"

#include <cmath>
#include <numbers>

#include "bosim/errors.hpp"

namespace bosim {

namespace {

/// SplitMix64 finalizer: bijective avalanche mix of a 64-bit word.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream RngStream::for_sample(std::uint64_t seed, std::uint64_t index) {
  // Two rounds distance the per-sample states from each other and from the
  // plain-seed stream even for adjacent indices.
  return RngStream(splitmix64(splitmix64(seed) + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) fail(errc::domain, "uniform_below requires n >= 1");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

std::complex<double> RngStream::gaussian_pair() {
  // Box-Muller; u1 is kept away from 0 so the logarithm stays finite.
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::vector<int> RngStream::permutation(int n) {
  if (n < 0) fail(errc::domain, "permutation length must be nonnegative");
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

}  // namespace bosim
