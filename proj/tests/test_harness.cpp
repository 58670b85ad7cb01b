#include "bosim/harness.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bosim/errors.hpp"
#include "bosim/matrix.hpp"
#include "bosim/photonics.hpp"
#include "bosim/rng.hpp"
#include "test_support.hpp"

using namespace bosim;

namespace {

std::string temp_path(const std::string& name) { return testing::TempDir() + name; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST(NameMaps, RoundTripEveryCommandAndAlgorithm) {
  for (const Command c :
       {Command::sample, Command::exact, Command::validate, Command::permanent, Command::bench})
    EXPECT_EQ(command_from_name(command_name(c)), c);
  for (const Algorithm a : {Algorithm::cc_a, Algorithm::cc_b, Algorithm::cc_c, Algorithm::shallow,
                            Algorithm::uniform})
    EXPECT_EQ(algorithm_from_name(algorithm_name(a)), a);
  EXPECT_EQ(algorithm_name(Algorithm::cc_b), "cc-b");
  EXPECT_BOSIM_ERROR(errc::parse, command_from_name("submit"));
  EXPECT_BOSIM_ERROR(errc::parse, algorithm_from_name("cc_b"));
}

TEST(TotalVariationDistance, BasicProperties) {
  EXPECT_EQ(total_variation_distance({0.5, 0.5}, {0.5, 0.5}), 0.0);
  EXPECT_NEAR(total_variation_distance({1.0, 0.0}, {0.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(total_variation_distance({0.7, 0.3}, {0.5, 0.5}), 0.2, 1e-15);
  EXPECT_BOSIM_ERROR(errc::size_mismatch, total_variation_distance({1.0}, {0.5, 0.5}));
}

TEST(ChiSquareStatistic, MatchesTheHandComputedValue) {
  const ChiSquare even = chi_square_statistic({0.5, 0.5}, {60, 40}, 100);
  EXPECT_NEAR(even.statistic, 4.0, 1e-12);
  EXPECT_EQ(even.dof, 1);
  // Zero-probability cells do not contribute and do not count toward dof.
  const ChiSquare skewed = chi_square_statistic({1.0, 0.0}, {99, 1}, 100);
  EXPECT_NEAR(skewed.statistic, 0.01, 1e-12);
  EXPECT_EQ(skewed.dof, 0);
  EXPECT_BOSIM_ERROR(errc::size_mismatch, chi_square_statistic({1.0}, {1, 2}, 3));
}

TEST(FitLine, RecoversAnExactLineAndRejectsDegenerateInput) {
  const LineFit fit = fit_line({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_BOSIM_ERROR(errc::size_mismatch, fit_line({1.0, 2.0}, {1.0}));
  EXPECT_BOSIM_ERROR(errc::domain, fit_line({1.0}, {1.0}));
  EXPECT_BOSIM_ERROR(errc::domain, fit_line({2.0, 2.0}, {1.0, 5.0}));
}

TEST(MatrixFile, RoundTripsExactly) {
  RngStream rng(130);
  const ComplexMatrix m = test::random_matrix(3, 4, rng);
  const std::string path = temp_path("roundtrip_matrix.txt");
  write_matrix_file(path, m);
  const ComplexMatrix back = read_matrix_file(path);
  ASSERT_EQ(back.rows(), 3);
  ASSERT_EQ(back.cols(), 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(back(i, j), m(i, j));
}

TEST(MatrixFile, RejectsMissingAndMalformedFiles) {
  EXPECT_BOSIM_ERROR(errc::parse, read_matrix_file(temp_path("does_not_exist.txt")));
  const std::string header = temp_path("bad_header.txt");
  write_text(header, "not numbers\n");
  EXPECT_BOSIM_ERROR(errc::parse, read_matrix_file(header));
  const std::string truncated = temp_path("truncated.txt");
  write_text(truncated, "2 2\n1 0 2 0\n");
  EXPECT_BOSIM_ERROR(errc::parse, read_matrix_file(truncated));
  const std::string oversize = temp_path("oversize.txt");
  write_text(oversize, "4097 1\n");
  EXPECT_BOSIM_ERROR(errc::parse, read_matrix_file(oversize));
}

TEST(CircuitFile, RoundTripsTheSpec) {
  RngStream rng(131);
  const CircuitSpec spec = random_shallow_circuit(6, 2, rng);
  const std::string path = temp_path("circuit.json");
  write_circuit_file(path, spec);
  EXPECT_EQ(circuit_to_json(read_circuit_file(path)), circuit_to_json(spec));
  EXPECT_BOSIM_ERROR(errc::parse, read_circuit_file(temp_path("no_circuit_here.json")));
}

TEST(SampleRecordJson, UsesAFixedCompactFieldOrder) {
  SampleRecord record;
  record.r = {2, 0};
  record.occupation.counts = {1, 0, 1};
  record.alpha = {1, 0};
  record.seed = 7;
  record.index = 3;
  EXPECT_EQ(sample_record_json(record),
            R"({"r":[2,0],"occupation":[1,0,1],"alpha":[1,0],"seed":7,"index":3})");
}

TEST(StandardInput, PutsOnePhotonInEachLeadingMode) {
  const OccupationState s = standard_input(5, 3);
  EXPECT_EQ(s.counts, (std::vector<int>{1, 1, 1, 0, 0}));
  EXPECT_EQ(s.photons(), 3);
  EXPECT_BOSIM_ERROR(errc::domain, standard_input(3, 5));
}

TEST(PrepareUnitary, BuildsAHaarMatrixWithATrivialBand) {
  RunConfig cfg;
  cfg.algorithm = Algorithm::cc_b;
  cfg.m = 4;
  cfg.seed = 21;
  const CircuitUnitary first = prepare_unitary(cfg);
  EXPECT_EQ(first.matrix.rows(), 4);
  EXPECT_LT(unitarity_defect(first.matrix), 1e-12);
  ASSERT_EQ(first.band.size(), 4);
  for (int j = 0; j < 4; ++j) {
    EXPECT_EQ(first.band.col_lo[static_cast<std::size_t>(j)], 0);
    EXPECT_EQ(first.band.col_hi[static_cast<std::size_t>(j)], 3);
  }
  const CircuitUnitary second = prepare_unitary(cfg);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(first.matrix(i, j), second.matrix(i, j));
}

TEST(PrepareUnitary, ShallowRunsNeedDepthAndModes) {
  RunConfig cfg;
  cfg.algorithm = Algorithm::shallow;
  cfg.m = 8;
  cfg.depth = 0;
  EXPECT_BOSIM_ERROR(errc::domain, prepare_unitary(cfg));
  cfg.depth = 2;
  cfg.m = 0;
  EXPECT_BOSIM_ERROR(errc::domain, prepare_unitary(cfg));
  cfg.m = 8;
  const CircuitUnitary cu = prepare_unitary(cfg);
  EXPECT_LT(unitarity_defect(cu.matrix), 1e-12);
  EXPECT_LE(cu.band.bandwidths().w(), 2 * cfg.depth);
}

TEST(PrepareUnitary, LoadsACircuitFileWhenGiven) {
  RngStream rng(132);
  const CircuitSpec spec = random_shallow_circuit(6, 1, rng);
  const std::string path = temp_path("prepared_circuit.json");
  write_circuit_file(path, spec);
  RunConfig cfg;
  cfg.circuit_path = path;
  const CircuitUnitary loaded = prepare_unitary(cfg);
  const CircuitUnitary direct = compose_circuit(spec);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_EQ(loaded.matrix(i, j), direct.matrix(i, j));
}

TEST(RunSample, WritesOneReproducibleJsonRecordPerLine) {
  RunConfig cfg;
  cfg.command = Command::sample;
  cfg.algorithm = Algorithm::cc_b;
  cfg.m = 5;
  cfg.n = 2;
  cfg.samples = 10;
  cfg.seed = 9;
  std::ostringstream first;
  run_sample(cfg, first);
  const std::vector<std::string> records = lines_of(first.str());
  ASSERT_EQ(records.size(), 10u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const nlohmann::json j = nlohmann::json::parse(records[i]);
    EXPECT_EQ(j.at("r").size(), 2u);
    EXPECT_EQ(j.at("alpha").size(), 2u);
    EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 9u);
    EXPECT_EQ(j.at("index").get<std::int64_t>(), static_cast<std::int64_t>(i));
    int photons = 0;
    for (const auto& count : j.at("occupation")) photons += count.get<int>();
    EXPECT_EQ(photons, 2);
  }

  std::ostringstream second;
  run_sample(cfg, second);
  EXPECT_EQ(first.str(), second.str()) << "same seed must reproduce byte-identically";

  // Each record depends only on (seed, index), so a shorter run is a prefix.
  cfg.samples = 3;
  std::ostringstream prefix;
  run_sample(cfg, prefix);
  EXPECT_EQ(first.str().substr(0, prefix.str().size()), prefix.str());
}

TEST(RunSample, CoversEveryAlgorithm) {
  for (const Algorithm algorithm :
       {Algorithm::cc_a, Algorithm::cc_b, Algorithm::cc_c, Algorithm::shallow, Algorithm::uniform}) {
    RunConfig cfg;
    cfg.algorithm = algorithm;
    cfg.m = 6;
    cfg.n = 2;
    cfg.depth = 2;
    cfg.samples = 4;
    cfg.seed = 33;
    std::ostringstream out;
    run_sample(cfg, out);
    const std::vector<std::string> records = lines_of(out.str());
    ASSERT_EQ(records.size(), 4u) << algorithm_name(algorithm);
    const nlohmann::json j = nlohmann::json::parse(records[0]);
    int photons = 0;
    for (const auto& count : j.at("occupation")) photons += count.get<int>();
    EXPECT_EQ(photons, 2) << algorithm_name(algorithm);
    if (algorithm == Algorithm::cc_a || algorithm == Algorithm::uniform)
      EXPECT_TRUE(j.at("alpha").empty()) << algorithm_name(algorithm);
  }
}

TEST(RunExact, WritesTheNormalizedCsvLaw) {
  RunConfig cfg;
  cfg.command = Command::exact;
  cfg.algorithm = Algorithm::cc_b;
  cfg.m = 4;
  cfg.n = 2;
  cfg.seed = 5;
  std::ostringstream out;
  const auto dist = run_exact(cfg, out);
  double total = 0.0;
  for (const auto& [occupation, probability] : dist) total += probability;
  EXPECT_NEAR(total, 1.0, 1e-9);
  const std::vector<std::string> rows = lines_of(out.str());
  ASSERT_EQ(rows.size(), dist.size() + 1);
  EXPECT_EQ(rows[0], "occupation,probability");
  EXPECT_NE(rows[1].find('-'), std::string::npos) << "occupations are dash-separated";
}

TEST(RunValidate, AcceptsAnHonestSamplerAndRejectsTheUniformControl) {
  RunConfig cfg;
  cfg.command = Command::validate;
  cfg.algorithm = Algorithm::cc_b;
  cfg.m = 5;
  cfg.n = 2;
  cfg.samples = 8000;
  cfg.seed = 17;
  cfg.threshold = 0.05;
  std::ostringstream out;
  const ValidationReport report = run_validate(cfg, out);
  EXPECT_TRUE(report.pass);
  EXPECT_LT(report.tvd, 0.05);
  EXPECT_EQ(report.samples, 8000);
  EXPECT_GT(report.chi_square_dof, 0);
  double expected_total = 0.0;
  for (const OutcomeRow& row : report.table) expected_total += row.expected;
  EXPECT_NEAR(expected_total, 1.0, 1e-9);
  const nlohmann::json j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("outcomes").size(), report.table.size());

  cfg.algorithm = Algorithm::uniform;
  std::ostringstream control;
  const ValidationReport rejected = run_validate(cfg, control);
  EXPECT_FALSE(rejected.pass);
  EXPECT_GT(rejected.tvd, 0.05);
}

TEST(RunPermanent, EvaluatesEverySelectedKernel) {
  const std::string path = temp_path("matchings.txt");
  write_matrix_file(path, test::matchings_matrix());
  RunConfig cfg;
  cfg.command = Command::permanent;
  cfg.matrix_path = path;
  std::ostringstream out;
  const cxd value = run_permanent(cfg, out);
  EXPECT_NEAR(value.real(), 3.0, 1e-10);
  EXPECT_NEAR(value.imag(), 0.0, 1e-10);
  EXPECT_FALSE(out.str().empty());

  cfg.kernels = {"naive"};
  std::ostringstream single;
  EXPECT_NEAR(run_permanent(cfg, single).real(), 3.0, 1e-12);

  cfg.kernels = {"naive", "fft"};
  EXPECT_BOSIM_ERROR(errc::parse, run_permanent(cfg, out));
  cfg.kernels = {"naive"};
  cfg.matrix_path = "";
  EXPECT_BOSIM_ERROR(errc::domain, run_permanent(cfg, out));
  cfg.matrix_path = temp_path("missing_matrix.txt");
  EXPECT_BOSIM_ERROR(errc::parse, run_permanent(cfg, out));
}

TEST(RunCli, DispatchesAndRoutesOutput) {
  const std::string matrix = temp_path("cli_identity.txt");
  write_matrix_file(matrix, ComplexMatrix::identity(5));
  RunConfig cfg;
  cfg.command = Command::permanent;
  cfg.matrix_path = matrix;
  cfg.out_path = temp_path("cli_out.txt");
  std::ostringstream fallback;
  EXPECT_EQ(run_cli(cfg, fallback), 0);
  EXPECT_TRUE(fallback.str().empty()) << "output must go to the file when a path is set";
  std::ifstream written(cfg.out_path);
  std::string contents((std::istreambuf_iterator<char>(written)), std::istreambuf_iterator<char>());
  EXPECT_NE(contents.find('1'), std::string::npos);

  cfg.out_path = temp_path("no_such_dir/cli_out.txt");
  EXPECT_BOSIM_ERROR(errc::parse, run_cli(cfg, fallback));

  // A failed validation gate is an exit code, not an exception.
  RunConfig bad;
  bad.command = Command::validate;
  bad.algorithm = Algorithm::uniform;
  bad.m = 5;
  bad.n = 2;
  bad.samples = 3000;
  bad.seed = 18;
  bad.threshold = 0.05;
  std::ostringstream sink;
  EXPECT_EQ(run_cli(bad, sink), 1);
}
