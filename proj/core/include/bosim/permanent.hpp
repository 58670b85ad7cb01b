#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "bosim/matrix.hpp"

namespace bosim {

/// Permanent by direct sum over permutations, O(n! * n). Definition-level
/// oracle for the fast kernels; refuses n > 12. The 0x0 permanent is 1.
cxd per_naive(const ComplexMatrix& m);

/// Permanent via the Glynn formula evaluated in reflected-binary Gray-code
/// order, O(n * 2^n); deterministic summation order. Refuses n > 30.
cxd per_ryser_glynn(const ComplexMatrix& m);

/// Total-function permanent: 1 for 0x0, 0 for non-square, per_ryser_glynn
/// otherwise.
cxd per_rect(const ComplexMatrix& m);

/// For W with k-1 rows and k columns, returns the k permanents of W with one
/// column removed: element j is per of W without column j. One shared
/// Gray-code sweep computes the whole family in O(k * 2^k).
std::vector<cxd> subpermanent_family(const ComplexMatrix& w);

/// Number of subpermanent_family evaluations since process start (or since a
/// test reset the counter). Instrumentation for the once-per-step contract of
/// the chain-rule samplers.
std::atomic<std::int64_t>& subpermanent_family_count();

/// Laplace accumulation sum_j coeff_row[j] * subperms[j]; the last-row
/// expansion step that extends a permanent family by one row.
cxd laplace_extend(std::span<const cxd> coeff_row, std::span<const cxd> subperms);

}  // namespace bosim
