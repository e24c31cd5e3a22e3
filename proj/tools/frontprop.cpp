// Batch driver: run one scenario, verify a suite, or inspect a field dump.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "frontprop/fpf.hpp"
#include "frontprop/par.hpp"
#include "frontprop/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"frontprop: nonlocal front propagation laboratory"};
  app.require_subcommand(1);

  frontprop::RunOptions opts;
  std::string scenario_path, suite_path, fpf_path;

  auto* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", opts.out_override, "output directory override");
  run->add_option("--threads", opts.threads, "worker thread cap");
  run->add_option("--seed", opts.seed, "seed for randomized checks");

  auto* verify = app.add_subcommand("verify", "run every scenario in a suite");
  verify->add_option("suite", suite_path, "suite JSON file")->required();
  verify->add_option("--out", opts.out_override, "output directory override");
  verify->add_option("--threads", opts.threads, "worker thread cap");
  verify->add_option("--seed", opts.seed, "seed for randomized checks");

  auto* info = app.add_subcommand("dump-info", "print an FPF1 header and value stats");
  info->add_option("file", fpf_path, "FPF1 header file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return frontprop::run_scenario_file(scenario_path, opts);
    if (verify->parsed()) return frontprop::verify_suite_file(suite_path, opts);
    if (info->parsed()) {
      std::cout << frontprop::fpf_info(fpf_path);
      return 0;
    }
  } catch (const frontprop::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
