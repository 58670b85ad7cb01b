#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bosim/errors.hpp"
#include "bosim/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Photonic interferometer sampling: samplers, exact laws, permanents, benchmarks"};
  app.get_formatter()->column_width(34);

  std::string command;
  app.add_option("command", command, "one of: sample, exact, validate, permanent, bench")
      ->required();
  std::string algorithm = "cc-b";
  app.add_option("--algorithm", algorithm, "cc-a, cc-b, cc-c, shallow or uniform (control)");

  bosim::RunConfig cfg;
  app.add_option("--m", cfg.m, "number of modes");
  app.add_option("--n", cfg.n, "number of photons (input |1^n, 0^(m-n)>)");
  app.add_option("--depth", cfg.depth, "nearest-neighbour circuit depth (shallow)");
  app.add_option("--samples", cfg.samples, "number of samples to draw");
  app.add_option("--seed", cfg.seed, "random seed; fixes the full output byte stream");
  app.add_option("--circuit", cfg.circuit_path, "circuit JSON file to load instead of generating");
  app.add_option("--matrix", cfg.matrix_path, "matrix text file ('rows cols' then 're im' pairs)");
  app.add_option("--out", cfg.out_path, "output file (default: stdout)");
  app.add_option("--threshold", cfg.threshold, "validation gate on total variation distance");
  std::vector<std::string> kernels;
  app.add_option("--kernel", kernels, "permanent kernel(s): naive, glynn, tree (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = bosim::command_from_name(command);
    cfg.algorithm = bosim::algorithm_from_name(algorithm);
    if (!kernels.empty()) cfg.kernels = kernels;
    return bosim::run_cli(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
