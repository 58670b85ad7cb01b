#include "bosim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bosim/errors.hpp"
#include "bosim/permanent.hpp"
#include "bosim/rng.hpp"
#include "bosim/treedec.hpp"
#include "json.hpp"

namespace bosim {

namespace {

using nlohmann::ordered_json;

/// 17 significant digits: enough to round-trip any double exactly.
std::string full_precision(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::string join_dashed(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += '-';
    out += std::to_string(values[i]);
  }
  return out;
}

/// All occupation vectors of n photons in m modes, lexicographically
/// ascending (the order exact_distribution uses).
std::vector<std::vector<int>> enumerate_occupations(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(m), 0);
  const auto recurse = [&](const auto& self, int mode, int left) -> void {
    if (mode == m) {
      if (left == 0) out.push_back(current);
      return;
    }
    if (mode == m - 1) {
      current[static_cast<std::size_t>(mode)] = left;
      out.push_back(current);
      current[static_cast<std::size_t>(mode)] = 0;
      return;
    }
    for (int c = 0; c <= left; ++c) {
      current[static_cast<std::size_t>(mode)] = c;
      self(self, mode + 1, left - c);
    }
    current[static_cast<std::size_t>(mode)] = 0;
  };
  if (m == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  recurse(recurse, 0, n);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Command command_from_name(const std::string& name) {
  if (name == "sample") return Command::sample;
  if (name == "exact") return Command::exact;
  if (name == "validate") return Command::validate;
  if (name == "permanent") return Command::permanent;
  if (name == "bench") return Command::bench;
  fail(errc::parse, "unknown command: " + name);
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "cc-a") return Algorithm::cc_a;
  if (name == "cc-b") return Algorithm::cc_b;
  if (name == "cc-c") return Algorithm::cc_c;
  if (name == "shallow") return Algorithm::shallow;
  if (name == "uniform") return Algorithm::uniform;
  fail(errc::parse, "unknown algorithm: " + name);
}

std::string command_name(Command c) {
  switch (c) {
    case Command::sample: return "sample";
    case Command::exact: return "exact";
    case Command::validate: return "validate";
    case Command::permanent: return "permanent";
    case Command::bench: return "bench";
  }
  fail(errc::domain, "invalid command value");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::cc_a: return "cc-a";
    case Algorithm::cc_b: return "cc-b";
    case Algorithm::cc_c: return "cc-c";
    case Algorithm::shallow: return "shallow";
    case Algorithm::uniform: return "uniform";
  }
  fail(errc::domain, "invalid algorithm value");
}

double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) fail(errc::size_mismatch, "pmfs must be aligned");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

ChiSquare chi_square_statistic(const std::vector<double>& expected_probability,
                               const std::vector<std::int64_t>& observed_counts,
                               std::int64_t samples) {
  if (expected_probability.size() != observed_counts.size())
    fail(errc::size_mismatch, "expected and observed must be aligned");
  ChiSquare result;
  int cells = 0;
  for (std::size_t i = 0; i < expected_probability.size(); ++i) {
    const double expected = expected_probability[i] * static_cast<double>(samples);
    if (expected <= 0.0) continue;
    const double diff = static_cast<double>(observed_counts[i]) - expected;
    result.statistic += diff * diff / expected;
    ++cells;
  }
  result.dof = std::max(0, cells - 1);
  return result;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(errc::size_mismatch, "fit inputs must be aligned");
  if (x.size() < 2) fail(errc::domain, "need at least two points to fit a line");
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) fail(errc::domain, "all x values coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open matrix file " + path);
  int rows = 0;
  int cols = 0;
  if (!(in >> rows >> cols)) fail(errc::parse, "matrix file needs a 'rows cols' header");
  if (rows < 0 || cols < 0 || rows > 4096 || cols > 4096)
    fail(errc::parse, "matrix dimensions out of range");
  std::vector<cxd> entries;
  entries.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(rows) * cols; ++i) {
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im))
      fail(errc::parse, "matrix file ended after " + std::to_string(i) + " of " +
                            std::to_string(static_cast<std::int64_t>(rows) * cols) + " entries");
    entries.emplace_back(re, im);
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) fail(errc::parse, "cannot open " + path + " for writing");
  out << m.rows() << ' ' << m.cols() << '\n';
  out.precision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << m(i, j).real() << ' ' << m(i, j).imag();
    }
    out << '\n';
  }
}

CircuitSpec read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open circuit file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return circuit_from_json(text.str());
}

void write_circuit_file(const std::string& path, const CircuitSpec& spec) {
  std::ofstream out(path);
  if (!out) fail(errc::parse, "cannot open " + path + " for writing");
  out << circuit_to_json(spec) << '\n';
}

std::string sample_record_json(const SampleRecord& record) {
  ordered_json j;
  j["r"] = record.r;
  j["occupation"] = record.occupation.counts;
  j["alpha"] = record.alpha;
  j["seed"] = record.seed;
  j["index"] = record.index;
  return j.dump();
}

OccupationState standard_input(int m, int n) {
  if (m < 0 || n < 0 || n > m) fail(errc::domain, "need 0 <= n <= m");
  OccupationState s;
  s.counts.assign(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < n; ++i) s.counts[static_cast<std::size_t>(i)] = 1;
  return s;
}

CircuitUnitary prepare_unitary(const RunConfig& cfg) {
  if (!cfg.circuit_path.empty()) return compose_circuit(read_circuit_file(cfg.circuit_path));
  if (cfg.m < 1) fail(errc::domain, "--m is required when no circuit file is given");
  RngStream rng(cfg.seed);
  if (cfg.algorithm == Algorithm::shallow) {
    if (cfg.depth < 1) fail(errc::domain, "the shallow sampler needs --depth >= 1");
    return compose_circuit(random_shallow_circuit(cfg.m, cfg.depth, rng));
  }
  CircuitUnitary cu;
  cu.matrix = haar_unitary(cfg.m, rng);
  cu.band.col_lo.assign(static_cast<std::size_t>(cfg.m), 0);
  cu.band.col_hi.assign(static_cast<std::size_t>(cfg.m), cfg.m - 1);
  return cu;
}

namespace {

SampleRecord draw_record(Algorithm algorithm, const CircuitUnitary& cu, int n,
                         const std::vector<std::vector<int>>& uniform_space, RngStream& rng) {
  switch (algorithm) {
    case Algorithm::cc_a: return sample_cc_a_record(cu.matrix, n, rng);
    case Algorithm::cc_b: return sample_cc_b_record(cu.matrix, n, rng);
    case Algorithm::cc_c: return sample_cc_c_record(cu.matrix, n, rng);
    case Algorithm::shallow: return sample_shallow_record(cu, n, rng);
    case Algorithm::uniform: {
      SampleRecord record;
      const std::size_t pick =
          static_cast<std::size_t>(rng.uniform_below(uniform_space.size()));
      record.occupation.counts = uniform_space[pick];
      record.r = z_from_occupation(record.occupation);
      return record;
    }
  }
  fail(errc::domain, "invalid algorithm value");
}

}  // namespace

void run_sample(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) fail(errc::domain, "--samples must be >= 1");
  const CircuitUnitary cu = prepare_unitary(cfg);
  const int m = cu.matrix.rows();
  std::vector<std::vector<int>> uniform_space;
  if (cfg.algorithm == Algorithm::uniform) uniform_space = enumerate_occupations(m, cfg.n);
  for (std::int64_t index = 0; index < cfg.samples; ++index) {
    RngStream rng = RngStream::for_sample(cfg.seed, static_cast<std::uint64_t>(index));
    SampleRecord record = draw_record(cfg.algorithm, cu, cfg.n, uniform_space, rng);
    record.seed = cfg.seed;
    record.index = index;
    out << sample_record_json(record) << '\n';
  }
}

std::vector<std::pair<OccupationState, double>> run_exact(const RunConfig& cfg,
                                                          std::ostream& out) {
  const CircuitUnitary cu = prepare_unitary(cfg);
  const auto dist = exact_distribution(cu.matrix, standard_input(cu.matrix.rows(), cfg.n));
  out << "occupation,probability\n";
  for (const auto& [occupation, probability] : dist)
    out << join_dashed(occupation.counts) << ',' << full_precision(probability) << '\n';
  return dist;
}

ValidationReport run_validate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) fail(errc::domain, "--samples must be >= 1");
  const CircuitUnitary cu = prepare_unitary(cfg);
  const int m = cu.matrix.rows();
  const int n = cfg.n;

  // The law the empirical stream is held against: the enumerated pmf, except
  // for the shallow sampler whose law is the collision-free chain law.
  std::vector<std::pair<std::vector<int>, double>> expected;
  if (cfg.algorithm == Algorithm::shallow) {
    for (const auto& [occupation, probability] : collision_free_chain_law(cu.matrix, n))
      expected.emplace_back(occupation, probability);
  } else {
    for (const auto& [occupation, probability] : exact_distribution(cu.matrix, standard_input(m, n)))
      expected.emplace_back(occupation.counts, probability);
  }

  std::vector<std::vector<int>> uniform_space;
  if (cfg.algorithm == Algorithm::uniform) uniform_space = enumerate_occupations(m, n);
  std::map<std::vector<int>, std::int64_t> counts;
  for (std::int64_t index = 0; index < cfg.samples; ++index) {
    RngStream rng = RngStream::for_sample(cfg.seed, static_cast<std::uint64_t>(index));
    ++counts[draw_record(cfg.algorithm, cu, n, uniform_space, rng).occupation.counts];
  }

  ValidationReport report;
  report.samples = cfg.samples;
  report.threshold = cfg.threshold;
  std::vector<double> probabilities;
  std::vector<double> frequencies;
  std::vector<std::int64_t> observed;
  for (const auto& [occupation, probability] : expected) {
    const auto it = counts.find(occupation);
    const std::int64_t count = (it == counts.end()) ? 0 : it->second;
    if (it != counts.end()) counts.erase(it);
    report.table.push_back(
        {occupation, probability, static_cast<double>(count) / static_cast<double>(cfg.samples)});
    probabilities.push_back(probability);
    observed.push_back(count);
  }
  for (const auto& [occupation, count] : counts) {  // seen but not in the law
    report.table.push_back(
        {occupation, 0.0, static_cast<double>(count) / static_cast<double>(cfg.samples)});
    probabilities.push_back(0.0);
    observed.push_back(count);
  }
  frequencies.reserve(observed.size());
  for (std::int64_t count : observed)
    frequencies.push_back(static_cast<double>(count) / static_cast<double>(cfg.samples));

  report.tvd = total_variation_distance(probabilities, frequencies);
  const ChiSquare chi = chi_square_statistic(probabilities, observed, cfg.samples);
  report.chi_square = chi.statistic;
  report.chi_square_dof = chi.dof;
  report.pass = report.tvd < report.threshold;

  ordered_json j;
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["m"] = m;
  j["n"] = n;
  j["samples"] = report.samples;
  j["seed"] = cfg.seed;
  j["tvd"] = report.tvd;
  j["chi_square"] = report.chi_square;
  j["chi_square_dof"] = report.chi_square_dof;
  j["threshold"] = report.threshold;
  j["pass"] = report.pass;
  ordered_json rows = ordered_json::array();
  for (const OutcomeRow& row : report.table) {
    ordered_json entry;
    entry["occupation"] = row.occupation;
    entry["expected"] = row.expected;
    entry["observed"] = row.observed;
    rows.push_back(entry);
  }
  j["outcomes"] = rows;
  out << j.dump(2) << '\n';
  return report;
}

cxd run_permanent(const RunConfig& cfg, std::ostream& out) {
  if (cfg.matrix_path.empty()) fail(errc::domain, "--matrix is required for the permanent command");
  if (cfg.kernels.empty()) fail(errc::domain, "select at least one kernel");
  const ComplexMatrix mat = read_matrix_file(cfg.matrix_path);

  std::vector<std::pair<std::string, cxd>> values;
  for (const std::string& kernel : cfg.kernels) {
    if (kernel == "naive") {
      values.emplace_back(kernel, per_naive(mat));
    } else if (kernel == "glynn") {
      values.emplace_back(kernel, per_ryser_glynn(mat));
    } else if (kernel == "tree") {
      values.emplace_back(kernel,
                          permanent_from_tree(linear_banded_decomposition(mat, enclosing_bandwidths(mat)), mat));
    } else {
      fail(errc::parse, "unknown kernel: " + kernel + " (choose naive, glynn or tree)");
    }
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    const cxd a = values[0].second;
    const cxd b = values[i].second;
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) > 1e-10 * scale)
      fail(errc::validation, "kernels disagree: " + values[0].first + " gives (" +
                                 full_precision(a.real()) + ", " + full_precision(a.imag()) +
                                 ") but " + values[i].first + " gives (" +
                                 full_precision(b.real()) + ", " + full_precision(b.imag()) + ")");
  }
  const cxd value = values[0].second;
  out << full_precision(value.real()) << ' ' << full_precision(value.imag()) << '\n';
  return value;
}

namespace {

BenchCell time_cell(Algorithm algorithm, int n, int m, int depth, std::int64_t min_reps,
                    std::uint64_t seed) {
  RngStream prep_rng(seed);
  const auto prep_start = std::chrono::steady_clock::now();
  CircuitUnitary cu;
  if (algorithm == Algorithm::shallow) {
    cu = compose_circuit(random_shallow_circuit(m, depth, prep_rng));
  } else {
    cu.matrix = haar_unitary(m, prep_rng);
    cu.band.col_lo.assign(static_cast<std::size_t>(m), 0);
    cu.band.col_hi.assign(static_cast<std::size_t>(m), m - 1);
  }
  const double prepare_seconds = seconds_since(prep_start);

  std::int64_t reps = 0;
  std::uint64_t index = 0;
  double elapsed = 0.0;
  const auto start = std::chrono::steady_clock::now();
  do {
    RngStream rng = RngStream::for_sample(seed, index++);
    switch (algorithm) {
      case Algorithm::shallow: sample_shallow(cu, n, rng); break;
      case Algorithm::cc_b: sample_cc_b(cu.matrix, n, rng); break;
      case Algorithm::cc_c: sample_cc_c(cu.matrix, n, rng); break;
      default: fail(errc::domain, "benchmark covers cc-b, cc-c and shallow");
    }
    ++reps;
    elapsed = seconds_since(start);
  } while (reps < min_reps || (elapsed < 0.02 && reps < 100000));

  BenchCell cell;
  cell.algorithm = algorithm_name(algorithm);
  cell.n = n;
  cell.m = m;
  cell.depth = depth;
  cell.repetitions = reps;
  cell.prepare_seconds = prepare_seconds;
  cell.per_sample_seconds = elapsed / static_cast<double>(reps);
  return cell;
}

void write_cell(std::ostream& out, const BenchCell& cell) {
  out << cell.algorithm << ',' << cell.n << ',' << cell.m << ',' << cell.depth << ','
      << cell.repetitions << ',' << full_precision(cell.prepare_seconds) << ','
      << full_precision(cell.per_sample_seconds) << '\n';
}

}  // namespace

BenchReport run_bench(const RunConfig& cfg, std::ostream& out) {
  const std::int64_t min_reps = std::max<std::int64_t>(5, cfg.samples);
  BenchReport report;
  out << "algorithm,n,m,depth,repetitions,prepare_seconds,per_sample_seconds\n";

  std::vector<double> log_n;
  std::vector<double> log_t;
  for (int n : {4, 6, 8, 10, 12, 14, 16}) {
    const BenchCell cell = time_cell(Algorithm::shallow, n, n * n, 2, min_reps, cfg.seed);
    report.cells.push_back(cell);
    write_cell(out, cell);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(cell.per_sample_seconds));
  }
  report.shallow_loglog = fit_line(log_n, log_t);

  std::vector<double> ns;
  std::vector<double> ln_t;
  for (int n : {10, 12, 14, 16, 18, 20, 22}) {
    const BenchCell cell = time_cell(Algorithm::cc_c, n, 2 * n, 0, min_reps, cfg.seed);
    report.cells.push_back(cell);
    write_cell(out, cell);
    ns.push_back(static_cast<double>(n));
    ln_t.push_back(std::log(cell.per_sample_seconds));
  }
  report.cc_c_ln = fit_line(ns, ln_t);

  out << "# fit shallow log(time) vs log(n): slope=" << full_precision(report.shallow_loglog.slope)
      << " intercept=" << full_precision(report.shallow_loglog.intercept) << '\n';
  out << "# fit cc-c ln(time) vs n: slope=" << full_precision(report.cc_c_ln.slope)
      << " intercept=" << full_precision(report.cc_c_ln.intercept) << '\n';
  return report;
}

int run_cli(const RunConfig& cfg, std::ostream& fallback) {
  std::ofstream file;
  std::ostream* out = &fallback;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) fail(errc::parse, "cannot open output file " + cfg.out_path);
    out = &file;
  }
  switch (cfg.command) {
    case Command::sample: run_sample(cfg, *out); return 0;
    case Command::exact: run_exact(cfg, *out); return 0;
    case Command::validate: return run_validate(cfg, *out).pass ? 0 : 1;
    case Command::permanent: run_permanent(cfg, *out); return 0;
    case Command::bench: run_bench(cfg, *out); return 0;
  }
  fail(errc::domain, "invalid command value");
}

}  // namespace bosim
