#pragma once

#include <utility>
#include <vector>

#include "bosim/matrix.hpp"

namespace bosim {

/// Photon occupation numbers per mode: counts[i] photons in mode i.
struct OccupationState {
  std::vector<int> counts;

  int modes() const { return static_cast<int>(counts.size()); }
  int photons() const;
  bool operator==(const OccupationState&) const = default;
};

/// Ordered list of mode indices, one per photon (first-quantized form).
using QuditVector = std::vector<int>;

/// Ascending set of input-photon column ids.
using ColumnSelection = std::vector<int>;

/// Modes with multiplicity, non-decreasing: (1,1,1,0,0) -> (0,1,2),
/// (2,0,0,1,0) -> (0,0,3).
QuditVector z_from_occupation(const OccupationState& s);

/// Inverse of z_from_occupation up to ordering: counts occurrences of each
/// mode. Entries must lie in [0, m).
OccupationState occupation_from_qudits(const QuditVector& q, int m);

/// The n x n matrix V with n_out[i] copies of row i and n_in[j] copies of
/// column j of U (rows/columns in non-decreasing mode order).
ComplexMatrix build_V(const ComplexMatrix& u, const OccupationState& n_out,
                      const OccupationState& n_in);

/// The |outs| x |cols| matrix with rows U_{outs[l], cols[h]}: rows in the
/// order sampled (newest photon last), columns ascending.
ComplexMatrix build_V_qudit(const ComplexMatrix& u, const QuditVector& outs,
                            const ColumnSelection& cols);

/// Output probability |per V|^2 / (prod n_i! * prod n'_i!) of measuring
/// n_out photons given n_in through interferometer u.
double outcome_probability(const ComplexMatrix& u, const OccupationState& n_out,
                           const OccupationState& n_in);

/// Full output pmf over all C(m+n-1, n) occupation states, ordered
/// lexicographically by occupation vector. Refuses outcome spaces larger
/// than 10^6.
std::vector<std::pair<OccupationState, double>> exact_distribution(const ComplexMatrix& u,
                                                                   const OccupationState& n_in);

/// Marginal probability of an ordered prefix (r_1..r_k) of output qudits for
/// the standard input |1^n, 0^(m-n)>:
///   p(r_1..r_k) = ((n-k)!/n!) * sum over k-subsets C of the first n columns
///                 of |per V~^(r,C)|^2.
/// Refuses C(n,k) > 10^5 terms.
double marginal_pmf_A(const ComplexMatrix& u, const QuditVector& prefix, int n);

/// n! as a double (exact through n = 170's representability range).
double factorial(int n);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace bosim
