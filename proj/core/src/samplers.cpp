#include "bosim/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "bosim/errors.hpp"
#include "bosim/permanent.hpp"

namespace bosim {

namespace {

constexpr int kMaxPhotonsA = 6;
constexpr int kMaxPhotonsB = 20;
constexpr int kMaxPhotonsC = 25;

void check_sampler_args(const ComplexMatrix& u, int n, int cap, const char* which) {
  if (u.rows() != u.cols()) fail(errc::domain, "interferometer matrix must be square");
  if (n < 0 || n > u.rows())
    fail(errc::domain, "photon count must lie in 0.." + std::to_string(u.rows()));
  if (n > cap)
    fail(errc::capacity, std::string(which) + " refuses more than " + std::to_string(cap) +
                             " photons (got " + std::to_string(n) + ")");
}

/// First k photons under the relabeling, as an ascending column set.
ColumnSelection head_columns(const std::vector<int>& alpha, int k) {
  ColumnSelection cols(alpha.begin(), alpha.begin() + k);
  std::sort(cols.begin(), cols.end());
  return cols;
}

int step_index(const std::vector<int>& alpha, const QuditVector& prefix) {
  const int k = static_cast<int>(prefix.size()) + 1;
  if (k > static_cast<int>(alpha.size()))
    fail(errc::domain, "prefix already assigns every photon a mode");
  return k;
}

std::vector<int> all_modes(int m) {
  std::vector<int> modes(static_cast<std::size_t>(m));
  std::iota(modes.begin(), modes.end(), 0);
  return modes;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> band_interval(const BandStructure& band, int column) {
  std::vector<int> rows;
  const int lo = band.col_lo[static_cast<std::size_t>(column)];
  const int hi = band.col_hi[static_cast<std::size_t>(column)];
  rows.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int r = lo; r <= hi; ++r) rows.push_back(r);
  return rows;
}

void check_band(const CircuitUnitary& circuit) {
  const int m = circuit.matrix.rows();
  if (circuit.matrix.cols() != m) fail(errc::domain, "circuit unitary must be square");
  if (circuit.band.size() != m)
    fail(errc::domain, "band metadata missing or inconsistent with the matrix size");
  for (int c = 0; c < m; ++c) {
    const int lo = circuit.band.col_lo[static_cast<std::size_t>(c)];
    const int hi = circuit.band.col_hi[static_cast<std::size_t>(c)];
    if (lo < 0 || hi >= m || lo > hi) fail(errc::domain, "band metadata malformed");
  }
}

}  // namespace

int draw_from_weights(const MarginalWeights& w, RngStream& rng) {
  if (w.support.size() != w.weights.size())
    fail(errc::size_mismatch, "support and weights differ in length");
  double total = 0.0;
  for (double x : w.weights) {
    if (!std::isfinite(x) || x < 0.0) fail(errc::domain, "weights must be finite and nonnegative");
    total += x;
  }
  if (!(total > 0.0)) fail(errc::degenerate_distribution, "all candidate weights are zero");
  const double target = rng.uniform01() * total;
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    if (w.weights[i] > 0.0) last_positive = static_cast<int>(i);
    acc += w.weights[i];
    if (target < acc) return w.support[i];
  }
  // Rounding can leave the accumulated total a hair under the target; the
  // draw then belongs to the last positive-weight candidate.
  return w.support[static_cast<std::size_t>(last_positive)];
}

MarginalWeights cc_b_step_weights(const ComplexMatrix& u, const std::vector<int>& alpha,
                                  const QuditVector& prefix) {
  const int m = u.rows();
  const int k = step_index(alpha, prefix);
  const ColumnSelection cols = head_columns(alpha, k);
  MarginalWeights w;
  w.support = all_modes(m);
  w.weights.resize(static_cast<std::size_t>(m));
  QuditVector rows = prefix;
  rows.push_back(0);
  for (int i = 0; i < m; ++i) {
    rows.back() = i;
    w.weights[static_cast<std::size_t>(i)] = std::norm(per_ryser_glynn(build_V_qudit(u, rows, cols)));
  }
  return w;
}

MarginalWeights cc_c_step_weights(const ComplexMatrix& u, const std::vector<int>& alpha,
                                  const QuditVector& prefix) {
  const int m = u.rows();
  const int k = step_index(alpha, prefix);
  const ColumnSelection cols = head_columns(alpha, k);
  // One subpermanent family of the shared (k-1) x k prefix matrix serves all
  // m candidates; each candidate costs only a length-k dot product.
  const std::vector<cxd> family = subpermanent_family(submatrix(u, prefix, cols));
  MarginalWeights w;
  w.support = all_modes(m);
  w.weights.resize(static_cast<std::size_t>(m));
  std::vector<cxd> coeff(static_cast<std::size_t>(k));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j)
      coeff[static_cast<std::size_t>(j)] = u(i, cols[static_cast<std::size_t>(j)]);
    w.weights[static_cast<std::size_t>(i)] = std::norm(laplace_extend(coeff, family));
  }
  return w;
}

namespace {

/// Shared chain loop: optional fresh relabeling, then one weighted draw per
/// photon, everything from the caller's stream.
template <typename StepWeights>
SampleRecord chain_record(const ComplexMatrix& u, int n, RngStream& rng, bool relabel,
                          StepWeights&& step) {
  SamplerState state{relabel ? rng.permutation(n) : std::vector<int>{}, {}, rng, table_stats()};
  state.prefix.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    state.prefix.push_back(draw_from_weights(step(state.alpha, state.prefix), state.rng));
  rng = state.rng;
  SampleRecord record;
  record.r = state.prefix;
  record.occupation = occupation_from_qudits(record.r, u.rows());
  record.alpha = state.alpha;
  return record;
}

}  // namespace

SampleRecord sample_cc_a_record(const ComplexMatrix& u, int n, RngStream& rng) {
  check_sampler_args(u, n, kMaxPhotonsA, "the subset-marginal sampler");
  const int m = u.rows();
  return chain_record(u, n, rng, false, [&](const std::vector<int>&, const QuditVector& prefix) {
    MarginalWeights w;
    w.support = all_modes(m);
    w.weights.resize(static_cast<std::size_t>(m));
    QuditVector next = prefix;
    next.push_back(0);
    for (int i = 0; i < m; ++i) {
      next.back() = i;
      w.weights[static_cast<std::size_t>(i)] = marginal_pmf_A(u, next, n);
    }
    return w;
  });
}

SampleRecord sample_cc_b_record(const ComplexMatrix& u, int n, RngStream& rng) {
  check_sampler_args(u, n, kMaxPhotonsB, "the permanent-per-candidate sampler");
  return chain_record(u, n, rng, true, [&](const std::vector<int>& alpha, const QuditVector& prefix) {
    return cc_b_step_weights(u, alpha, prefix);
  });
}

SampleRecord sample_cc_c_record(const ComplexMatrix& u, int n, RngStream& rng) {
  check_sampler_args(u, n, kMaxPhotonsC, "the subpermanent-family sampler");
  return chain_record(u, n, rng, true, [&](const std::vector<int>& alpha, const QuditVector& prefix) {
    return cc_c_step_weights(u, alpha, prefix);
  });
}

QuditVector sample_cc_a(const ComplexMatrix& u, int n, RngStream& rng) {
  return sample_cc_a_record(u, n, rng).r;
}

QuditVector sample_cc_b(const ComplexMatrix& u, int n, RngStream& rng) {
  return sample_cc_b_record(u, n, rng).r;
}

QuditVector sample_cc_c(const ComplexMatrix& u, int n, RngStream& rng) {
  return sample_cc_c_record(u, n, rng).r;
}

ShallowPlan::ShallowPlan(const CircuitUnitary* circuit, int n, std::vector<int> alpha)
    : circuit_(circuit), n_(n), alpha_(std::move(alpha)) {
  check_band(*circuit_);
  const int m_modes = circuit_->matrix.rows();
  if (n_ < 0 || n_ > m_modes)
    fail(errc::domain, "photon count must lie in 0.." + std::to_string(m_modes));
  if (static_cast<int>(alpha_.size()) != n_)
    fail(errc::domain, "relabeling length differs from the photon count");
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (int a : alpha_) {
    if (a < 0 || a >= n_ || seen[static_cast<std::size_t>(a)])
      fail(errc::domain, "relabeling is not a permutation of 0..n-1");
    seen[static_cast<std::size_t>(a)] = 1;
  }
  band_rows_.reserve(static_cast<std::size_t>(n_));
  q_tables_.reserve(static_cast<std::size_t>(n_));
  for (int c = 0; c < n_; ++c) {
    band_rows_.push_back(band_interval(circuit_->band, c));
    q_tables_.push_back(compute_Q(band_rows_.back(), {c}, circuit_->matrix));
  }
}

const std::vector<int>& ShallowPlan::band_rows(int column) const {
  if (column < 0 || column >= n_) fail(errc::lookup, "column outside the occupied range");
  return band_rows_[static_cast<std::size_t>(column)];
}

const NodeTable& ShallowPlan::q_table(int column) const {
  if (column < 0 || column >= n_) fail(errc::lookup, "column outside the occupied range");
  return q_tables_[static_cast<std::size_t>(column)];
}

ShallowPlan shallow_prepare(const CircuitUnitary& circuit, int n, std::vector<int> alpha) {
  return ShallowPlan(&circuit, n, std::move(alpha));
}

MarginalWeights shallow_marginal_weights(const ShallowPlan& plan, const QuditVector& prefix,
                                         TableCounters* extra) {
  const int n = plan.n();
  const int m = plan.m();
  const int k = static_cast<int>(prefix.size()) + 1;
  if (k > n) fail(errc::domain, "prefix already assigns every photon a mode");
  for (int r : prefix)
    if (r < 0 || r >= m) fail(errc::domain, "prefix mode outside 0..m-1");
  std::vector<int> sorted_prefix = prefix;
  std::sort(sorted_prefix.begin(), sorted_prefix.end());
  if (std::adjacent_find(sorted_prefix.begin(), sorted_prefix.end()) != sorted_prefix.end())
    fail(errc::collision, "prefix repeats an output mode");

  // The step works on the path restricted to the first k relabeled photons
  // (their physical columns, ascending) and the rows sampled so far.
  std::vector<int> kept(plan.alpha().begin(), plan.alpha().begin() + k);
  std::sort(kept.begin(), kept.end());
  std::vector<std::vector<int>> rho_hat(static_cast<std::size_t>(k));
  std::vector<NodeTable> q_hat(static_cast<std::size_t>(k));
  for (int pos = 0; pos < k; ++pos) {
    const int c = kept[static_cast<std::size_t>(pos)];
    rho_hat[static_cast<std::size_t>(pos)] = intersect_sorted(plan.band_rows(c), sorted_prefix);
    q_hat[static_cast<std::size_t>(pos)] =
        restrict_table(plan.q_table(c), rho_hat[static_cast<std::size_t>(pos)], {c});
  }
  const auto kappa_of = [&kept](int pos) {
    return std::vector<int>{kept[static_cast<std::size_t>(pos)]};
  };

  // Right spine: the chain hanging right of the head, computed once.
  std::vector<NodeTable> p_right(static_cast<std::size_t>(k));
  for (int pos = k - 1; pos >= 1; --pos) {
    std::vector<ChildLink> links;
    if (pos + 1 <= k - 1)
      links.push_back(make_child_link(rho_hat[static_cast<std::size_t>(pos)], kappa_of(pos),
                                      rho_hat[static_cast<std::size_t>(pos + 1)], kappa_of(pos + 1),
                                      &p_right[static_cast<std::size_t>(pos + 1)]));
    p_right[static_cast<std::size_t>(pos)] =
        subset_convolution(q_hat[static_cast<std::size_t>(pos)], links, extra);
  }

  // Head walk: a column-free dummy root takes position j; the node it just
  // left joins the left spine, everything else is reused.
  std::vector<NodeTable> p_left(static_cast<std::size_t>(k));
  std::vector<cxd> subperm(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    if (j >= 1) {
      std::vector<ChildLink> links;
      if (j - 2 >= 0)
        links.push_back(make_child_link(rho_hat[static_cast<std::size_t>(j - 1)], kappa_of(j - 1),
                                        rho_hat[static_cast<std::size_t>(j - 2)], kappa_of(j - 2),
                                        &p_left[static_cast<std::size_t>(j - 2)]));
      p_left[static_cast<std::size_t>(j - 1)] =
          subset_convolution(q_hat[static_cast<std::size_t>(j - 1)], links, extra);
    }
    std::vector<int> rho_d;
    if (j >= 1 && j + 1 <= k - 1)
      rho_d = intersect_sorted(rho_hat[static_cast<std::size_t>(j - 1)],
                               rho_hat[static_cast<std::size_t>(j + 1)]);
    const NodeTable q_d = compute_Q(rho_d, {}, plan.unitary(), extra);
    std::vector<ChildLink> links;
    if (j >= 1)
      links.push_back(make_child_link(rho_d, {}, rho_hat[static_cast<std::size_t>(j - 1)],
                                      kappa_of(j - 1), &p_left[static_cast<std::size_t>(j - 1)]));
    if (j + 1 <= k - 1)
      links.push_back(make_child_link(rho_d, {}, rho_hat[static_cast<std::size_t>(j + 1)],
                                      kappa_of(j + 1), &p_right[static_cast<std::size_t>(j + 1)]));
    subperm[static_cast<std::size_t>(j)] = subset_convolution(q_d, links, extra).root_value();
  }

  // Candidates: rows structurally reachable from any kept column, minus the
  // modes already sampled. Everything else has a zero row in its extended
  // submatrix, hence weight exactly zero.
  std::vector<char> in_prefix(static_cast<std::size_t>(m), 0);
  for (int r : prefix) in_prefix[static_cast<std::size_t>(r)] = 1;
  std::vector<char> reachable(static_cast<std::size_t>(m), 0);
  for (int pos = 0; pos < k; ++pos)
    for (int r : plan.band_rows(kept[static_cast<std::size_t>(pos)]))
      reachable[static_cast<std::size_t>(r)] = 1;

  MarginalWeights w;
  std::vector<cxd> coeff(static_cast<std::size_t>(k));
  bool any_positive = false;
  for (int i = 0; i < m; ++i) {
    if (!reachable[static_cast<std::size_t>(i)] || in_prefix[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < k; ++j)
      coeff[static_cast<std::size_t>(j)] = plan.unitary()(i, kept[static_cast<std::size_t>(j)]);
    const double weight = std::norm(laplace_extend(coeff, subperm));
    any_positive = any_positive || weight > 0.0;
    w.support.push_back(i);
    w.weights.push_back(weight);
  }
  if (!any_positive)
    fail(errc::degenerate_distribution, "prefix has zero probability under this circuit");
  return w;
}

SampleRecord sample_shallow_record(const CircuitUnitary& circuit, int n, RngStream& rng) {
  SamplerState state{rng.permutation(n), {}, rng, table_stats()};
  const ShallowPlan plan = shallow_prepare(circuit, n, state.alpha);
  state.prefix.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    state.prefix.push_back(draw_from_weights(shallow_marginal_weights(plan, state.prefix), state.rng));
  rng = state.rng;
  SampleRecord record;
  record.r = state.prefix;
  record.occupation = occupation_from_qudits(record.r, plan.m());
  record.alpha = state.alpha;
  return record;
}

OccupationState sample_shallow(const CircuitUnitary& circuit, int n, RngStream& rng) {
  return sample_shallow_record(circuit, n, rng).occupation;
}

TreeDecomposition shallow_decomposition(const CircuitUnitary& circuit, int n) {
  check_band(circuit);
  if (n < 0 || n > circuit.matrix.rows())
    fail(errc::domain, "photon count must lie in 0.." + std::to_string(circuit.matrix.rows()));
  TreeDecomposition t;
  int prev = -1;
  for (int c = 0; c < n; ++c) {
    const std::vector<int> rows = band_interval(circuit.band, c);
    prev = (c == 0) ? t.add_root(rows, {c}) : t.add_child(prev, rows, {c});
  }
  return t;
}

std::map<std::vector<int>, double> collision_free_chain_law(const ComplexMatrix& u, int n) {
  if (u.rows() != u.cols()) fail(errc::domain, "interferometer matrix must be square");
  const int m = u.rows();
  if (n < 0 || n > m) fail(errc::domain, "photon count must lie in 0.." + std::to_string(m));
  double chains = 1.0;
  for (int i = 1; i <= n; ++i) chains *= static_cast<double>(i) * m;
  if (chains > 2e6)
    fail(errc::capacity, "chain enumeration would exceed 2*10^6 branches");

  std::map<std::vector<int>, double> law;
  if (n == 0) {
    law[std::vector<int>(static_cast<std::size_t>(m), 0)] = 1.0;
    return law;
  }

  std::vector<int> alpha(static_cast<std::size_t>(n));
  std::iota(alpha.begin(), alpha.end(), 0);
  const double n_fact = factorial(n);
  QuditVector prefix;
  const auto descend = [&](const auto& self, double prob) -> void {
    if (static_cast<int>(prefix.size()) == n) {
      law[occupation_from_qudits(prefix, m).counts] += prob / n_fact;
      return;
    }
    MarginalWeights w = cc_b_step_weights(u, alpha, prefix);
    for (int r : prefix) w.weights[static_cast<std::size_t>(r)] = 0.0;
    const double total = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
    if (!(total > 0.0)) return;  // dead branch: the sampler would abort here
    for (int i = 0; i < m; ++i) {
      const double wi = w.weights[static_cast<std::size_t>(i)];
      if (wi <= 0.0) continue;
      prefix.push_back(i);
      self(self, prob * wi / total);
      prefix.pop_back();
    }
  };
  do {
    descend(descend, 1.0);
  } while (std::next_permutation(alpha.begin(), alpha.end()));
  return law;
}

}  // namespace bosim
