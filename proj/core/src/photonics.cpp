#include "bosim/photonics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bosim/errors.hpp"

namespace bosim {

namespace {

/// Mode coupled with `mode` by a parity-p layer on m modes (or `mode` itself
/// for pass-through slots).
int layer_partner(int mode, int parity, int m) {
  if (mode < parity) return mode;  // leading pass-through of parity 1
  const int offset = mode - parity;
  if (offset % 2 == 1) return mode - 1;
  return (mode + 1 < m) ? mode + 1 : mode;  // trailing unpaired mode
}

}  // namespace

int BandStructure::width() const {
  int w = 0;
  for (int j = 0; j < size(); ++j)
    w = std::max(w, col_hi[static_cast<std::size_t>(j)] - col_lo[static_cast<std::size_t>(j)] + 1);
  return w;
}

Bandwidths BandStructure::bandwidths() const {
  Bandwidths best{0, 0};
  int best_span = 0;
  for (int j = 0; j < size(); ++j) {
    const int lo = col_lo[static_cast<std::size_t>(j)];
    const int hi = col_hi[static_cast<std::size_t>(j)];
    const int span = hi - lo + 1;
    if (span > best_span) {
      best_span = span;
      best = Bandwidths{hi - j, j - lo};
    }
  }
  return best;
}

ComplexMatrix beamsplitter_matrix(const BeamsplitterParams& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  ComplexMatrix b(2, 2);
  b(0, 0) = std::polar(1.0, p.phi_t) * c;
  b(0, 1) = std::polar(1.0, p.phi_r) * s;
  b(1, 0) = -std::polar(1.0, -p.phi_r) * s;
  b(1, 1) = std::polar(1.0, -p.phi_t) * c;
  return b;
}

int layer_gate_count(int parity, int m) {
  if (parity != 0 && parity != 1) fail(errc::layout, "layer parity must be 0 or 1");
  if (m < 0) fail(errc::domain, "mode count must be nonnegative");
  return (m - parity) / 2;
}

ComplexMatrix layer_unitary(const LayerSpec& spec, int m) {
  const int expected = layer_gate_count(spec.parity, m);
  if (static_cast<int>(spec.gates.size()) != expected)
    fail(errc::layout, "parity-" + std::to_string(spec.parity) + " layer on m = " +
                           std::to_string(m) + " modes needs " + std::to_string(expected) +
                           " gates, got " + std::to_string(spec.gates.size()));
  ComplexMatrix layer = ComplexMatrix::identity(m);
  for (int g = 0; g < expected; ++g) {
    const int a = spec.parity + 2 * g;
    const ComplexMatrix b = beamsplitter_matrix(spec.gates[static_cast<std::size_t>(g)]);
    layer(a, a) = b(0, 0);
    layer(a, a + 1) = b(0, 1);
    layer(a + 1, a) = b(1, 0);
    layer(a + 1, a + 1) = b(1, 1);
  }
  return layer;
}

CircuitUnitary compose_circuit(const CircuitSpec& spec) {
  if (spec.m < 1) fail(errc::domain, "circuit needs at least one mode");
  if (spec.depth != static_cast<int>(spec.layers.size()))
    fail(errc::layout, "depth " + std::to_string(spec.depth) + " does not match " +
                           std::to_string(spec.layers.size()) + " layers");
  CircuitUnitary out;
  out.matrix = ComplexMatrix::identity(spec.m);
  out.band.col_lo.resize(static_cast<std::size_t>(spec.m));
  out.band.col_hi.resize(static_cast<std::size_t>(spec.m));
  for (int j = 0; j < spec.m; ++j) {
    out.band.col_lo[static_cast<std::size_t>(j)] = j;
    out.band.col_hi[static_cast<std::size_t>(j)] = j;
  }

  for (int i = 0; i < spec.depth; ++i) {
    const LayerSpec& layer = spec.layers[static_cast<std::size_t>(i)];
    if (layer.parity != i % 2)
      fail(errc::layout, "layer " + std::to_string(i) + " must have parity " +
                             std::to_string(i % 2) + ", got " + std::to_string(layer.parity));
    out.matrix = matmul(layer_unitary(layer, spec.m), out.matrix);
    // A layer can only move amplitude between coupled neighbours, so each
    // column's reachable-row interval grows by at most one on each end.
    for (int j = 0; j < spec.m; ++j) {
      int& lo = out.band.col_lo[static_cast<std::size_t>(j)];
      int& hi = out.band.col_hi[static_cast<std::size_t>(j)];
      if (layer_partner(lo, layer.parity, spec.m) == lo - 1) --lo;
      if (layer_partner(hi, layer.parity, spec.m) == hi + 1) ++hi;
    }
  }
  return out;
}

CircuitSpec random_shallow_circuit(int m, int depth, RngStream& rng) {
  if (m < 2) fail(errc::domain, "random circuit needs m >= 2");
  if (depth < 0) fail(errc::domain, "depth must be nonnegative");
  CircuitSpec spec;
  spec.m = m;
  spec.depth = depth;
  constexpr double tau = 2.0 * std::numbers::pi;
  for (int i = 0; i < depth; ++i) {
    LayerSpec layer;
    layer.parity = i % 2;
    const int gates = layer_gate_count(layer.parity, m);
    layer.gates.reserve(static_cast<std::size_t>(gates));
    for (int g = 0; g < gates; ++g)
      layer.gates.push_back(BeamsplitterParams{rng.uniform(0.0, tau), rng.uniform(0.0, tau),
                                               rng.uniform(0.0, tau)});
    spec.layers.push_back(std::move(layer));
  }
  return spec;
}

ComplexMatrix haar_unitary(int m, RngStream& rng) {
  if (m < 1) fail(errc::domain, "haar_unitary needs m >= 1");
  // Columns of a complex Ginibre matrix, orthonormalized in order. Modified
  // Gram-Schmidt yields the unique QR factorization with a positive real
  // diagonal of R, making Q Haar-distributed with no phase fix-up.
  std::vector<std::vector<cxd>> cols(static_cast<std::size_t>(m),
                                     std::vector<cxd>(static_cast<std::size_t>(m)));
  for (auto& col : cols)
    for (cxd& v : col) v = rng.gaussian_pair();

  for (int j = 0; j < m; ++j) {
    auto& v = cols[static_cast<std::size_t>(j)];
    for (int i = 0; i < j; ++i) {
      const auto& q = cols[static_cast<std::size_t>(i)];
      cxd overlap{};
      for (int r = 0; r < m; ++r)
        overlap += std::conj(q[static_cast<std::size_t>(r)]) * v[static_cast<std::size_t>(r)];
      for (int r = 0; r < m; ++r) v[static_cast<std::size_t>(r)] -= overlap * q[static_cast<std::size_t>(r)];
    }
    double norm2 = 0.0;
    for (const cxd& x : v) norm2 += std::norm(x);
    const double norm = std::sqrt(norm2);
    if (!(norm > 0.0)) fail(errc::domain, "degenerate Ginibre draw");
    for (cxd& x : v) x /= norm;
  }

  ComplexMatrix u(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) u(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return u;
}

}  // namespace bosim
