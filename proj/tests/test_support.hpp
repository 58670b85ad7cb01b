#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "bosim/errors.hpp"
#include "bosim/matrix.hpp"
#include "bosim/rng.hpp"

namespace bosim::test {

/// |a - b| scaled by max(1, |a|, |b|): absolute near zero, relative elsewhere.
inline double rel_diff(cxd a, cxd b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_diff(double a, double b) { return rel_diff(cxd(a), cxd(b)); }

/// Runs `body` and checks that it throws bosim::error with the given code.
inline ::testing::AssertionResult throws_code(errc expected, const std::function<void()>& body) {
  try {
    body();
  } catch (const error& e) {
    if (e.code() == expected) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << errc_name(e.code()) << " (\"" << e.what()
                                         << "\"), expected " << errc_name(expected);
  } catch (const std::exception& e) {
    return ::testing::AssertionFailure()
           << "threw non-library exception \"" << e.what() << "\", expected " << errc_name(expected);
  }
  return ::testing::AssertionFailure() << "did not throw, expected " << errc_name(expected);
}

#define EXPECT_BOSIM_ERROR(code, ...) \
  EXPECT_TRUE(::bosim::test::throws_code((code), [&] { __VA_ARGS__; }))

/// Dense matrix with independent standard-complex-Gaussian entries.
inline ComplexMatrix random_matrix(int rows, int cols, RngStream& rng) {
  std::vector<cxd> entries(static_cast<std::size_t>(rows) * cols);
  for (cxd& e : entries) e = rng.gaussian_pair();
  return ComplexMatrix(rows, cols, entries);
}

/// Square matrix with Gaussian entries inside the (w1, w2) band and exact
/// zeros outside it.
inline ComplexMatrix random_banded_matrix(int n, const Bandwidths& b, RngStream& rng) {
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const int lo = std::max(0, j - b.w2);
    const int hi = std::min(n - 1, j + b.w1);
    for (int i = lo; i <= hi; ++i) m(i, j) = rng.gaussian_pair();
  }
  return m;
}

/// Integer 0/1 matrix from a row-major pattern string of the given shape.
inline ComplexMatrix pattern_matrix(int rows, int cols, const char* pattern) {
  std::vector<cxd> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; pattern[i] != '\0'; ++i) entries.emplace_back(pattern[i] == '1' ? 1.0 : 0.0, 0.0);
  return ComplexMatrix(rows, cols, entries);
}

/// The 3x3 matchings example: permanent exactly 3.
inline ComplexMatrix matchings_matrix() { return pattern_matrix(3, 3, "111110011"); }

/// The 3x3 decomposition example: permanent exactly 2.
inline ComplexMatrix branching_example_matrix() { return pattern_matrix(3, 3, "110001111"); }

}  // namespace bosim::test
