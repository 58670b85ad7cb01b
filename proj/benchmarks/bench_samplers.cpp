// Microbenchmarks for the photon samplers: the two permanent-chain variants
// on Haar interferometers and the tree-walk sampler on shallow circuits.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "bosim/matrix.hpp"
#include "bosim/photonics.hpp"
#include "bosim/rng.hpp"
#include "bosim/samplers.hpp"

namespace {

using bosim::ComplexMatrix;
using bosim::RngStream;

ComplexMatrix haar_matrix(int m, std::uint64_t seed) {
  RngStream rng(seed);
  return bosim::haar_unitary(m, rng);
}

void BM_SampleCCB(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix u = haar_matrix(2 * n, 21);
  RngStream rng(22);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::sample_cc_b(u, n, rng));
}
BENCHMARK(BM_SampleCCB)->DenseRange(2, 8, 2);

void BM_SampleCCC(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix u = haar_matrix(2 * n, 23);
  RngStream rng(24);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::sample_cc_c(u, n, rng));
}
BENCHMARK(BM_SampleCCC)->DenseRange(2, 12, 2);

void BM_SampleShallow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream circuit_rng(25);
  const bosim::CircuitUnitary c =
      bosim::compose_circuit(bosim::random_shallow_circuit(n * n, 2, circuit_rng));
  RngStream rng(26);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::sample_shallow(c, n, rng));
}
BENCHMARK(BM_SampleShallow)->DenseRange(4, 16, 4);

}  // namespace

BENCHMARK_MAIN();
