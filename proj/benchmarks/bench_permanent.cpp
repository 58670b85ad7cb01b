// Microbenchmarks for the permanent kernels: the factorial-time reference,
// the Gray-code evaluator, the subpermanent family, and the banded tree DP.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "bosim/cp_permanent.hpp"
#include "bosim/matrix.hpp"
#include "bosim/permanent.hpp"
#include "bosim/rng.hpp"
#include "bosim/treedec.hpp"

namespace {

using bosim::Bandwidths;
using bosim::ComplexMatrix;
using bosim::RngStream;

ComplexMatrix gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  RngStream rng(seed);
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.gaussian_pair();
  return m;
}

ComplexMatrix gaussian_banded_matrix(int n, const Bandwidths& w, std::uint64_t seed) {
  RngStream rng(seed);
  ComplexMatrix m(n, n);
  for (int c = 0; c < n; ++c) {
    const int lo = std::max(0, c - w.w2);
    const int hi = std::min(n - 1, c + w.w1);
    for (int r = lo; r <= hi; ++r) m(r, c) = rng.gaussian_pair();
  }
  return m;
}

void BM_PerNaive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix m = gaussian_matrix(n, n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::per_naive(m));
}
BENCHMARK(BM_PerNaive)->DenseRange(4, 9);

void BM_PerRyserGlynn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix m = gaussian_matrix(n, n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::per_ryser_glynn(m));
}
BENCHMARK(BM_PerRyserGlynn)->DenseRange(4, 20, 4);

void BM_SubpermanentFamily(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ComplexMatrix m = gaussian_matrix(k - 1, k, 13);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::subpermanent_family(m));
}
BENCHMARK(BM_SubpermanentFamily)->DenseRange(4, 20, 4);

void BM_PermanentFromTree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Bandwidths w{2, 2};
  const ComplexMatrix m = gaussian_banded_matrix(n, w, 14);
  const bosim::TreeDecomposition t = bosim::linear_banded_decomposition(m, w);
  for (auto _ : state) benchmark::DoNotOptimize(bosim::permanent_from_tree(t, m));
}
BENCHMARK(BM_PermanentFromTree)->DenseRange(8, 24, 8);

}  // namespace

BENCHMARK_MAIN();
