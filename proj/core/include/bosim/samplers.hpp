#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bosim/cp_permanent.hpp"
#include "bosim/fock.hpp"
#include "bosim/matrix.hpp"
#include "bosim/photonics.hpp"
#include "bosim/rng.hpp"
#include "bosim/treedec.hpp"

namespace bosim {

/// Candidate output modes with unnormalized, nonnegative weights.
struct MarginalWeights {
  std::vector<int> support;
  std::vector<double> weights;
};

/// Per-sample working state of a chain-rule sampler: the input relabeling
/// drawn for this sample, the output modes fixed so far, the sample's random
/// stream, and the table-count snapshot taken when the sample started.
struct SamplerState {
  std::vector<int> alpha;
  QuditVector prefix;
  RngStream rng;
  TableCounters counters;
};

/// One generated sample: photon-by-photon modes, their occupation form, and
/// the relabeling used (empty for samplers that draw none).
struct SampleRecord {
  QuditVector r;
  OccupationState occupation;
  std::vector<int> alpha;
  std::uint64_t seed = 0;
  std::int64_t index = 0;
};

/// Draws a mode from unnormalized weights by a linear cumulative scan.
/// Weights must be finite and nonnegative; an all-zero vector raises a
/// degenerate-distribution error.
int draw_from_weights(const MarginalWeights& w, RngStream& rng);

/// Chain-rule sampler scoring candidates by full subset-summed marginals;
/// exact but O(m n 3^n) per sample, so refuses n > 6. Input |1^n, 0^(m-n)>.
QuditVector sample_cc_a(const ComplexMatrix& u, int n, RngStream& rng);

/// Chain-rule sampler with a fresh uniform input relabeling per sample; step
/// k scores every mode by one k x k permanent. Refuses n > 20.
QuditVector sample_cc_b(const ComplexMatrix& u, int n, RngStream& rng);

/// Same law as sample_cc_b; step k computes one subpermanent family of the
/// shared (k-1) x k prefix matrix and scores all modes by last-row Laplace
/// extension. Refuses n > 25.
QuditVector sample_cc_c(const ComplexMatrix& u, int n, RngStream& rng);

/// Record variants of the chain samplers: same draws from the same stream,
/// plus the relabeling and occupation form (seed/index left for the caller).
SampleRecord sample_cc_a_record(const ComplexMatrix& u, int n, RngStream& rng);
SampleRecord sample_cc_b_record(const ComplexMatrix& u, int n, RngStream& rng);
SampleRecord sample_cc_c_record(const ComplexMatrix& u, int n, RngStream& rng);

/// Step-k weight vector of the B sampler for a fixed relabeling and prefix:
/// weight[i] = |per of the (prefix..,i) x alpha([k]) submatrix|^2 over all m
/// modes (support is 0..m-1).
MarginalWeights cc_b_step_weights(const ComplexMatrix& u, const std::vector<int>& alpha,
                                  const QuditVector& prefix);

/// Step-k weight vector of the C sampler: identical values to
/// cc_b_step_weights via the Laplace identity, one subpermanent family per
/// call.
MarginalWeights cc_c_step_weights(const ComplexMatrix& u, const std::vector<int>& alpha,
                                  const QuditVector& prefix);

/// Everything one sample of the shallow sampler reuses across its steps: the
/// circuit the sample runs through, the photon relabeling, and the full
/// local-permanent table of every occupied input column. Keeps a pointer to
/// the circuit, which must outlive the plan.
class ShallowPlan {
 public:
  ShallowPlan(const CircuitUnitary* circuit, int n, std::vector<int> alpha);

  int m() const { return circuit_->matrix.rows(); }
  int n() const { return n_; }
  const std::vector<int>& alpha() const { return alpha_; }
  const ComplexMatrix& unitary() const { return circuit_->matrix; }

  /// Structurally reachable output rows of input column c (ascending).
  const std::vector<int>& band_rows(int column) const;

  /// Precomputed full local-permanent table of input column c's node.
  const NodeTable& q_table(int column) const;

 private:
  const CircuitUnitary* circuit_;
  int n_;
  std::vector<int> alpha_;
  std::vector<std::vector<int>> band_rows_;
  std::vector<NodeTable> q_tables_;
};

/// Builds the per-sample plan: checks the band metadata, relabels photons by
/// alpha, and computes the n full column tables (counted, once per sample,
/// outside the per-step budget). alpha must be a permutation of 0..n-1.
ShallowPlan shallow_prepare(const CircuitUnitary& circuit, int n, std::vector<int> alpha);

/// Step-k weights of the shallow sampler for the plan's relabeling and a
/// collision-free prefix (k = prefix size + 1). Restricts the column path to
/// the prefix rows and the first k relabeled photons, computes the k
/// one-column-deleted subpermanents by walking a dummy root along the path
/// (right spine once, then three tables per later head position), and scores
/// each structurally reachable unsampled mode by last-row Laplace extension.
/// Off-support modes have weight exactly zero. Raises a collision error on a
/// repeated prefix entry and a degenerate-distribution error when every
/// weight is zero.
MarginalWeights shallow_marginal_weights(const ShallowPlan& plan, const QuditVector& prefix,
                                         TableCounters* extra = nullptr);

/// Full shallow-circuit sample: fresh relabeling, n chained draws, occupation
/// counting. Deterministic per (circuit, rng state).
OccupationState sample_shallow(const CircuitUnitary& circuit, int n, RngStream& rng);

/// sample_shallow plus the raw mode sequence and relabeling (seed/index left
/// for the caller).
SampleRecord sample_shallow_record(const CircuitUnitary& circuit, int n, RngStream& rng);

/// The occupied-column path decomposition the shallow sampler walks: node c
/// (one per input column c < n, physical order) carries column c and its
/// structurally reachable rows.
TreeDecomposition shallow_decomposition(const CircuitUnitary& circuit, int n);

/// Exact law of the collision-free chain sampler: enumerates every
/// relabeling and every repeat-free mode sequence, chaining the B-sampler
/// step weights with already-used modes masked out, and aggregates by
/// occupation. Oracle for validating sample_shallow; refuses n! * m^n >
/// 2*10^6 chains.
std::map<std::vector<int>, double> collision_free_chain_law(const ComplexMatrix& u, int n);

}  // namespace bosim
