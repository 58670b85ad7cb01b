#include "bosim/photonics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bosim/errors.hpp"
#include "bosim/matrix.hpp"
#include "test_support.hpp"

using namespace bosim;
using test::rel_diff;

namespace {

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

TEST(Beamsplitter, ZeroAnglesGiveIdentity) {
  const ComplexMatrix b = beamsplitter_matrix({0.0, 0.0, 0.0});
  EXPECT_LT(max_entry_diff(b, ComplexMatrix::identity(2)), 1e-15);
}

TEST(Beamsplitter, FullCouplingSwapsModes) {
  const ComplexMatrix b = beamsplitter_matrix({std::numbers::pi / 2, 0.0, 0.0});
  EXPECT_NEAR(std::abs(b(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(0, 1) - cxd(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(1, 0) - cxd(-1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(1, 1)), 0.0, 1e-15);
}

TEST(Beamsplitter, MatchesItsClosedForm) {
  const BeamsplitterParams p{0.7, 1.1, -0.4};
  const ComplexMatrix b = beamsplitter_matrix(p);
  const cxd i_unit(0.0, 1.0);
  EXPECT_LT(std::abs(b(0, 0) - std::exp(i_unit * p.phi_t) * std::cos(p.theta)), 1e-15);
  EXPECT_LT(std::abs(b(0, 1) - std::exp(i_unit * p.phi_r) * std::sin(p.theta)), 1e-15);
  EXPECT_LT(std::abs(b(1, 0) + std::exp(-i_unit * p.phi_r) * std::sin(p.theta)), 1e-15);
  EXPECT_LT(std::abs(b(1, 1) - std::exp(-i_unit * p.phi_t) * std::cos(p.theta)), 1e-15);
  EXPECT_LT(unitarity_defect(b), 1e-14);
}

TEST(LayerGateCount, FollowsTheParityLayout) {
  EXPECT_EQ(layer_gate_count(0, 4), 2);
  EXPECT_EQ(layer_gate_count(0, 5), 2);
  EXPECT_EQ(layer_gate_count(0, 2), 1);
  EXPECT_EQ(layer_gate_count(1, 4), 1);
  EXPECT_EQ(layer_gate_count(1, 5), 2);
  EXPECT_EQ(layer_gate_count(1, 6), 2);
  EXPECT_EQ(layer_gate_count(1, 2), 0);
}

TEST(LayerUnitary, IdentityGatesGiveIdentity) {
  LayerSpec spec{0, {BeamsplitterParams{}, BeamsplitterParams{}}};
  EXPECT_LT(max_entry_diff(layer_unitary(spec, 4), ComplexMatrix::identity(4)), 1e-15);
}

// Odd mode count with offset parity: a 1x1 pass-through block first, then
// two coupled pairs, and no trailing identity.
TEST(LayerUnitary, OffsetParityBlockLayout) {
  RngStream rng(31);
  LayerSpec spec{1, {}};
  for (int g = 0; g < 2; ++g)
    spec.gates.push_back({rng.uniform(0, 6.28), rng.uniform(0, 6.28), rng.uniform(0, 6.28)});
  const ComplexMatrix l = layer_unitary(spec, 5);
  EXPECT_EQ(l(0, 0), cxd(1.0, 0.0));
  const ComplexMatrix b0 = beamsplitter_matrix(spec.gates[0]);
  const ComplexMatrix b1 = beamsplitter_matrix(spec.gates[1]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(l(1 + i, 1 + j), b0(i, j));
      EXPECT_EQ(l(3 + i, 3 + j), b1(i, j));
    }
  // Everything outside the diagonal blocks is exactly zero.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const bool in_block = (i == 0 && j == 0) || (i >= 1 && i <= 2 && j >= 1 && j <= 2) ||
                            (i >= 3 && j >= 3);
      if (!in_block) EXPECT_EQ(l(i, j), cxd(0.0, 0.0)) << i << "," << j;
    }
}

TEST(LayerUnitary, RejectsInconsistentGateCount) {
  LayerSpec spec{0, {BeamsplitterParams{}}};
  EXPECT_BOSIM_ERROR(errc::layout, layer_unitary(spec, 4));
}

TEST(LayerUnitary, RandomLayerIsUnitary) {
  RngStream rng(32);
  LayerSpec spec{0, {}};
  for (int g = 0; g < 3; ++g)
    spec.gates.push_back({rng.uniform(0, 6.28), rng.uniform(0, 6.28), rng.uniform(0, 6.28)});
  EXPECT_LT(unitarity_defect(layer_unitary(spec, 6)), 1e-13);
}

TEST(ComposeCircuit, DepthZeroIsIdentityWithDiagonalBand) {
  const CircuitUnitary c = compose_circuit(CircuitSpec{5, 0, {}, {}});
  EXPECT_LT(max_entry_diff(c.matrix, ComplexMatrix::identity(5)), 1e-15);
  ASSERT_EQ(c.band.size(), 5);
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(c.band.col_lo[static_cast<std::size_t>(j)], j);
    EXPECT_EQ(c.band.col_hi[static_cast<std::size_t>(j)], j);
  }
}

TEST(ComposeCircuit, RejectsWrongParitySequence) {
  CircuitSpec spec{4, 1, {LayerSpec{1, {BeamsplitterParams{}}}}, {}};
  EXPECT_BOSIM_ERROR(errc::layout, compose_circuit(spec));
}

TEST(ComposeCircuit, DepthTwoStaysInsideWidthFourBand) {
  RngStream rng(33);
  const CircuitSpec spec = random_shallow_circuit(6, 2, rng);
  const CircuitUnitary c = compose_circuit(spec);
  EXPECT_LE(bandwidths_of(c.matrix).w(), 4);
  EXPECT_LE(c.band.width(), 4);
  // Structural zeros are exact: outside the tracked band nothing is touched.
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (!c.band.contains(i, j)) EXPECT_EQ(c.matrix(i, j), cxd(0.0, 0.0));
}

TEST(ComposeCircuit, OneLayerGrowsTheBandByAtMostOneEachWay) {
  RngStream rng(34);
  const CircuitSpec spec = random_shallow_circuit(10, 4, rng);
  CircuitSpec prefix{10, 0, {}, {}};
  BandStructure previous = compose_circuit(prefix).band;
  for (int d = 0; d < 4; ++d) {
    prefix.layers.push_back(spec.layers[static_cast<std::size_t>(d)]);
    prefix.depth = d + 1;
    const BandStructure next = compose_circuit(prefix).band;
    for (int j = 0; j < 10; ++j) {
      EXPECT_GE(next.col_lo[static_cast<std::size_t>(j)],
                previous.col_lo[static_cast<std::size_t>(j)] - 1);
      EXPECT_LE(next.col_hi[static_cast<std::size_t>(j)],
                previous.col_hi[static_cast<std::size_t>(j)] + 1);
    }
    previous = next;
  }
}

TEST(RandomShallowCircuit, DeterministicPerSeed) {
  RngStream a(77);
  RngStream b(77);
  const CircuitSpec first = random_shallow_circuit(8, 3, a);
  const CircuitSpec second = random_shallow_circuit(8, 3, b);
  EXPECT_EQ(circuit_to_json(first), circuit_to_json(second));
}

TEST(RandomShallowCircuit, ComposedResultIsUnitaryAndBanded) {
  RngStream rng(35);
  const CircuitUnitary c6 = compose_circuit(random_shallow_circuit(6, 2, rng));
  EXPECT_LT(unitarity_defect(c6.matrix), 1e-13);
  const CircuitUnitary c8 = compose_circuit(random_shallow_circuit(8, 3, rng));
  EXPECT_LE(bandwidths_of(c8.matrix).w(), 6);
}

TEST(RandomShallowCircuit, RejectsDegenerateModeCounts) {
  RngStream rng(36);
  EXPECT_BOSIM_ERROR(errc::domain, random_shallow_circuit(1, 2, rng));
}

TEST(HaarUnitary, SmallCases) {
  RngStream rng(37);
  const ComplexMatrix u1 = haar_unitary(1, rng);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-12);
  EXPECT_LT(unitarity_defect(haar_unitary(5, rng)), 1e-12);
}

// |U_00|^2 under Haar measure on U(4) is Beta(1,3) with mean 1/4; the
// empirical mean over 10^4 independent draws must sit within ~3 standard
// errors (tolerance 0.006).
TEST(HaarUnitary, FirstEntryMassMatchesTheHaarMarginal) {
  RngStream rng(38);
  double sum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) sum += std::norm(haar_unitary(4, rng)(0, 0));
  EXPECT_NEAR(sum / draws, 0.25, 0.006);
}

TEST(CircuitJson, RoundTripIsLossless) {
  RngStream rng(39);
  CircuitSpec spec = random_shallow_circuit(7, 3, rng);
  spec.seed = 123456789;
  const CircuitSpec back = circuit_from_json(circuit_to_json(spec));
  ASSERT_EQ(back.m, spec.m);
  ASSERT_EQ(back.depth, spec.depth);
  ASSERT_TRUE(back.seed.has_value());
  EXPECT_EQ(*back.seed, 123456789u);
  ASSERT_EQ(back.layers.size(), spec.layers.size());
  for (std::size_t d = 0; d < spec.layers.size(); ++d) {
    ASSERT_EQ(back.layers[d].parity, spec.layers[d].parity);
    ASSERT_EQ(back.layers[d].gates.size(), spec.layers[d].gates.size());
    for (std::size_t g = 0; g < spec.layers[d].gates.size(); ++g) {
      EXPECT_EQ(back.layers[d].gates[g].theta, spec.layers[d].gates[g].theta);
      EXPECT_EQ(back.layers[d].gates[g].phi_t, spec.layers[d].gates[g].phi_t);
      EXPECT_EQ(back.layers[d].gates[g].phi_r, spec.layers[d].gates[g].phi_r);
    }
  }
}

TEST(CircuitJson, OmitsAbsentSeedAndRejectsGarbage) {
  CircuitSpec spec{2, 0, {}, {}};
  EXPECT_EQ(circuit_to_json(spec).find("seed"), std::string::npos);
  EXPECT_BOSIM_ERROR(errc::parse, circuit_from_json("not json at all"));
}
