#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bosim/fock.hpp"
#include "bosim/matrix.hpp"
#include "bosim/photonics.hpp"
#include "bosim/samplers.hpp"

namespace bosim {

enum class Command { sample, exact, validate, permanent, bench };

enum class Algorithm {
  cc_a,     ///< subset-marginal chain sampler (oracle scale)
  cc_b,     ///< permanent-per-candidate chain sampler
  cc_c,     ///< subpermanent-family chain sampler
  shallow,  ///< banded-circuit tree-walk sampler
  uniform,  ///< uniform over the outcome space; negative control only
};

Command command_from_name(const std::string& name);
Algorithm algorithm_from_name(const std::string& name);
std::string command_name(Command c);
std::string algorithm_name(Algorithm a);

/// One resolved invocation of the tool (flags after parsing).
struct RunConfig {
  Command command = Command::sample;
  Algorithm algorithm = Algorithm::cc_b;
  int m = 0;
  int n = 0;
  int depth = 0;
  std::int64_t samples = 1;
  std::uint64_t seed = 1;
  std::string circuit_path;  ///< optional circuit JSON to load instead of generating
  std::string matrix_path;   ///< matrix file for the permanent command
  std::string out_path;      ///< empty = standard output
  double threshold = 0.03;   ///< validation gate on total variation distance
  std::vector<std::string> kernels = {"naive", "glynn", "tree"};
};

/// Half the L1 distance between two aligned pmfs.
double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q);

/// Pearson statistic over the cells with positive expected probability;
/// dof = that cell count minus one. Reported alongside the gate, never gating.
struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
};
ChiSquare chi_square_statistic(const std::vector<double>& expected_probability,
                               const std::vector<std::int64_t>& observed_counts,
                               std::int64_t samples);

/// Per-outcome comparison row of a validation run.
struct OutcomeRow {
  std::vector<int> occupation;
  double expected = 0.0;
  double observed = 0.0;  ///< empirical frequency
};

/// Result of comparing an empirical sampler against its exact law.
struct ValidationReport {
  double tvd = 1.0;
  double chi_square = 0.0;
  int chi_square_dof = 0;
  std::int64_t samples = 0;
  double threshold = 0.03;
  bool pass = false;
  std::vector<OutcomeRow> table;
};

/// Ordinary least-squares line through (x, y).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Matrix text file: header "rows cols", then row-major "re im" pairs,
/// whitespace-separated. Malformed input raises a parse error.
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

/// Circuit JSON file wrappers around circuit_from_json/circuit_to_json.
CircuitSpec read_circuit_file(const std::string& path);
void write_circuit_file(const std::string& path, const CircuitSpec& spec);

/// One sample as a single JSON line with fixed field order:
/// {"r": [...], "occupation": [...], "alpha": [...], "seed": s, "index": i}.
std::string sample_record_json(const SampleRecord& record);

/// Occupation |1^n, 0^(m-n)>: the standard sampling input.
OccupationState standard_input(int m, int n);

/// The unitary a run works on: the circuit file when given, else a random
/// nearest-neighbour circuit (shallow) or a Haar unitary with a trivial full
/// band (other algorithms), both drawn from the run seed.
CircuitUnitary prepare_unitary(const RunConfig& cfg);

/// Writes cfg.samples JSONL records drawn with per-index substreams
/// (seed, index), so any subset of indices reproduces byte-identically.
void run_sample(const RunConfig& cfg, std::ostream& out);

/// Writes the full outcome pmf as CSV "occupation,probability" (occupation
/// dash-separated, 17 significant digits) and returns it.
std::vector<std::pair<OccupationState, double>> run_exact(const RunConfig& cfg, std::ostream& out);

/// Samples, compares against the algorithm's exact law (enumerated pmf for
/// the chain samplers, the collision-free chain law for the shallow
/// sampler), writes the report as JSON, and returns it.
ValidationReport run_validate(const RunConfig& cfg, std::ostream& out);

/// Reads the matrix file, evaluates every selected kernel, checks pairwise
/// agreement to 1e-10 relative (validation error otherwise), prints the
/// value with 17 significant digits per component, and returns it.
cxd run_permanent(const RunConfig& cfg, std::ostream& out);

/// One measured grid point of the scaling benchmark.
struct BenchCell {
  std::string algorithm;
  int n = 0;
  int m = 0;
  int depth = 0;
  std::int64_t repetitions = 0;
  double prepare_seconds = 0.0;     ///< circuit/unitary construction, once
  double per_sample_seconds = 0.0;  ///< mean over the repetitions
};

/// Benchmark cells plus the two fitted scaling signatures: log-log slope of
/// the shallow sampler (time vs n at depth 2, m = n^2) and the ln-time slope
/// per photon of the subpermanent-family sampler.
struct BenchReport {
  std::vector<BenchCell> cells;
  LineFit shallow_loglog;
  LineFit cc_c_ln;
};

/// Runs the scaling grids (wall time; preparation excluded from per-sample
/// cost and reported separately), writes CSV with trailing "# fit" comment
/// lines, and returns the report. cfg.samples sets the minimum repetitions
/// per cell (at least 5); timing repeats until the cell accumulates enough
/// wall time to be readable.
BenchReport run_bench(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.command, writing to cfg.out_path (or `fallback` when no
/// path is set). Returns the process exit code: 0 on success, 1 when a
/// validation run fails its gate.
int run_cli(const RunConfig& cfg, std::ostream& fallback);

}  // namespace bosim
