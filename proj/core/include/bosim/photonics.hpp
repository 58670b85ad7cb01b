#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bosim/matrix.hpp"
#include "bosim/rng.hpp"

namespace bosim {

/// Beamsplitter parameters: coupling angle and the two absorbed phases.
struct BeamsplitterParams {
  double theta = 0.0;
  double phi_t = 0.0;
  double phi_r = 0.0;
};

/// One nearest-neighbour layer: parity 0 couples (0,1),(2,3),..; parity 1
/// leaves mode 0 alone and couples (1,2),(3,4),.. Unpaired trailing modes
/// pass through unchanged.
struct LayerSpec {
  int parity = 0;
  std::vector<BeamsplitterParams> gates;
};

/// A depth-D nearest-neighbour circuit: layers alternate parity starting
/// at 0. The optional seed records how a generated instance was drawn.
struct CircuitSpec {
  int m = 0;
  int depth = 0;
  std::vector<LayerSpec> layers;
  std::optional<std::uint64_t> seed;
};

/// Exact structural sparsity of a circuit unitary: for every column j, the
/// inclusive interval [lo, hi] of rows that are reachable through the gate
/// pattern. Entries outside the interval are exactly zero regardless of the
/// angles; entries inside may still vanish numerically.
struct BandStructure {
  std::vector<int> col_lo;
  std::vector<int> col_hi;

  int size() const { return static_cast<int>(col_lo.size()); }
  bool contains(int row, int col) const {
    return row >= col_lo[static_cast<std::size_t>(col)] &&
           row <= col_hi[static_cast<std::size_t>(col)];
  }
  /// Maximum number of structurally nonzero entries in any column.
  int width() const;
  /// Reach pair of the widest column (ties: lowest column), matching what
  /// bandwidths_of detects numerically for generic angles.
  Bandwidths bandwidths() const;
};

/// Circuit unitary together with its structural band metadata.
struct CircuitUnitary {
  ComplexMatrix matrix;
  BandStructure band;
};

/// The 2x2 beamsplitter
///   [ e^{i phi_t} cos theta    e^{i phi_r} sin theta ]
///   [ -e^{-i phi_r} sin theta  e^{-i phi_t} cos theta ].
ComplexMatrix beamsplitter_matrix(const BeamsplitterParams& p);

/// Number of gates a parity-p layer has on m modes.
int layer_gate_count(int parity, int m);

/// Block-diagonal layer unitary; gate count must match layer_gate_count.
ComplexMatrix layer_unitary(const LayerSpec& spec, int m);

/// Product of the layer unitaries, latest layer leftmost, plus the
/// symbolically tracked band structure. Depth 0 gives the identity.
CircuitUnitary compose_circuit(const CircuitSpec& spec);

/// Random circuit with all angles uniform in [0, 2*pi).
CircuitSpec random_shallow_circuit(int m, int depth, RngStream& rng);

/// Haar-distributed m x m unitary: QR of a complex Ginibre matrix by
/// modified Gram-Schmidt, whose positive-diagonal triangular factor makes Q
/// exactly Haar.
ComplexMatrix haar_unitary(int m, RngStream& rng);

/// JSON document for a circuit:
/// {"m": int, "depth": int, "layers": [{"parity": 0|1, "gates": [{"theta":
/// f, "phi_t": f, "phi_r": f}]}]} with an optional "seed". Round-trips are
/// lossless at full double precision.
std::string circuit_to_json(const CircuitSpec& spec);
CircuitSpec circuit_from_json(const std::string& text);

}  // namespace bosim
