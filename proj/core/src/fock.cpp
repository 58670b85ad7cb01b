#include "bosim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bosim/errors.hpp"
#include "bosim/permanent.hpp"

namespace bosim {

int OccupationState::photons() const {
  int n = 0;
  for (int c : counts) n += c;
  return n;
}

double factorial(int n) {
  if (n < 0) fail(errc::domain, "factorial of a negative number");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

QuditVector z_from_occupation(const OccupationState& s) {
  QuditVector z;
  for (int mode = 0; mode < s.modes(); ++mode) {
    const int c = s.counts[static_cast<std::size_t>(mode)];
    if (c < 0) fail(errc::domain, "negative occupation count");
    for (int i = 0; i < c; ++i) z.push_back(mode);
  }
  return z;
}

OccupationState occupation_from_qudits(const QuditVector& q, int m) {
  if (m < 0) fail(errc::domain, "mode count must be nonnegative");
  OccupationState s;
  s.counts.assign(static_cast<std::size_t>(m), 0);
  for (int mode : q) {
    if (mode < 0 || mode >= m)
      fail(errc::domain, "mode " + std::to_string(mode) + " outside [0, " + std::to_string(m) + ")");
    ++s.counts[static_cast<std::size_t>(mode)];
  }
  return s;
}

ComplexMatrix build_V(const ComplexMatrix& u, const OccupationState& n_out,
                      const OccupationState& n_in) {
  if (n_out.modes() != u.rows() || n_in.modes() != u.cols())
    fail(errc::domain, "occupation length does not match the interferometer");
  if (n_out.photons() != n_in.photons())
    fail(errc::domain, "input and output photon numbers differ");
  const QuditVector rows = z_from_occupation(n_out);
  const QuditVector cols = z_from_occupation(n_in);
  return submatrix(u, rows, cols);
}

ComplexMatrix build_V_qudit(const ComplexMatrix& u, const QuditVector& outs,
                            const ColumnSelection& cols) {
  if (outs.size() != cols.size())
    fail(errc::domain, "row and column selections must have equal length");
  ColumnSelection sorted_cols = cols;
  std::sort(sorted_cols.begin(), sorted_cols.end());
  return submatrix(u, outs, sorted_cols);
}

double outcome_probability(const ComplexMatrix& u, const OccupationState& n_out,
                           const OccupationState& n_in) {
  const ComplexMatrix v = build_V(u, n_out, n_in);
  double denom = 1.0;
  for (int c : n_in.counts) denom *= factorial(c);
  for (int c : n_out.counts) denom *= factorial(c);
  return std::norm(per_rect(v)) / denom;
}

std::vector<std::pair<OccupationState, double>> exact_distribution(const ComplexMatrix& u,
                                                                   const OccupationState& n_in) {
  const int m = u.rows();
  if (n_in.modes() != u.cols()) fail(errc::domain, "input occupation does not match the interferometer");
  const int n = n_in.photons();
  const double outcomes = binomial(m + n - 1, n);
  if (outcomes > 1e6)
    fail(errc::capacity, "outcome space of " + std::to_string(outcomes) + " states exceeds 1e6");

  std::vector<std::pair<OccupationState, double>> dist;
  dist.reserve(static_cast<std::size_t>(outcomes));
  OccupationState out;
  out.counts.assign(static_cast<std::size_t>(m), 0);
  // Lexicographically ascending enumeration of all m-part compositions of n.
  const auto enumerate = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == m - 1) {
      out.counts[static_cast<std::size_t>(mode)] = remaining;
      dist.emplace_back(out, outcome_probability(u, out, n_in));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      out.counts[static_cast<std::size_t>(mode)] = c;
      self(self, mode + 1, remaining - c);
    }
    out.counts[static_cast<std::size_t>(mode)] = 0;
  };
  if (m == 0) {
    if (n == 0) dist.emplace_back(out, 1.0);
    return dist;
  }
  enumerate(enumerate, 0, n);
  return dist;
}

double marginal_pmf_A(const ComplexMatrix& u, const QuditVector& prefix, int n) {
  const int k = static_cast<int>(prefix.size());
  if (k > n) fail(errc::domain, "prefix longer than the photon number");
  if (n > u.cols()) fail(errc::domain, "photon number exceeds the mode count");
  if (binomial(n, k) > 1e5)
    fail(errc::capacity, "marginal enumeration of C(n,k) subsets exceeds 1e5 terms");

  // Sum |per|^2 over all k-subsets C of the occupied input columns {0..n-1}.
  double total = 0.0;
  std::vector<int> subset(static_cast<std::size_t>(k));
  const auto enumerate = [&](auto&& self, int next, int chosen) -> void {
    if (chosen == k) {
      total += std::norm(per_rect(build_V_qudit(u, prefix, subset)));
      return;
    }
    for (int c = next; c < n - (k - chosen - 1); ++c) {
      subset[static_cast<std::size_t>(chosen)] = c;
      self(self, c + 1, chosen + 1);
    }
  };
  enumerate(enumerate, 0, 0);
  return total * factorial(n - k) / factorial(n);
}

}  // namespace bosim
