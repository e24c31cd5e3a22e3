#pragma once
#include <cstdint>
#include <memory>
#include <string>

#include "frontprop/weak_solution.hpp"

namespace frontprop {

struct RunOptions {
  int threads = 0;  // 0 = leave as configured
  std::uint64_t seed = 1;
  std::string out_override;  // overrides the scenario output dir
};

// Parsed scenario configuration (JSON; schema in the README).
struct Scenario {
  std::string name;
  // grid
  double half_width = 0.0;
  double h = 0.0;
  int dim = 2;
  // datum
  std::string shape;  // disk | square | two_disks
  double radius = 1.0, half_side = 1.0;
  std::array<double, 2> center{0, 0};
  std::array<double, 2> center2{0, 0};
  double radius2 = 0.0;
  double floor_value = -1.0;
  // model
  std::string model_type;  // constant | dislocation | fn
  double c_const = 1.0;
  double kernel_radius = 1.0, kernel_scale = 0.25;
  std::string kernel_fpf, c1_fpf, v0_fpf;
  double c1_const = 1.0;
  struct Builtin {
    std::string name;  // constant | affine_clamped
    double value = 0.0, a = 0.0, b = 0.0, lo = 0.0, hi = 0.0;
  };
  Builtin alpha, gplus, gminus;
  std::string v0_builtin = "zero";
  double v0_s0 = 0.1, v0_amp = 1.0;
  // run
  double horizon = 0.0;
  double cfl_safety = 0.9;
  int record_count = 11;
  double tol_chi = 1e-3;
  int max_iter = 30;
  std::string picard_seed = "datum";  // zero | one | datum
  double damping = 1.0;
  // checks
  struct Check {
    std::string name;
    double a = -0.1, b = 0.1, tau = 0.5, delta = 0.2, c2 = 1.1;
    double R = 3.0, lambda_hat = 6.0, lambda0 = 2.0;
    int axis_count = 16, count = 4;
    std::vector<double> r_samples{0.025, 0.05, 0.1};
    std::vector<double> t_samples{0.25, 0.5};
  };
  std::vector<Check> checks;
  std::string output = "out";
};

Scenario parse_scenario_file(const std::string& path);  // throws BadConfig/IoError

// Everything a run produces, kept in memory for checks and tests.
struct ScenarioRun {
  Scenario scenario;
  InitialDatum datum;
  VelocityBounds bounds;
  Trajectory traj, vel;
  WeakSolution weak;      // populated for nonlocal models
  bool nonlocal = false;
  DislocationModel dislocation;
  FnModel fn;
  std::shared_ptr<ChiCoupledLaw> law;
  std::vector<double> record_times;
  std::vector<EstimateReport> reports;
  bool all_pass = true;
};

// Build + validate + solve (no checks yet). Throws on validation/solver
// failure; the CLI maps exception phases to exit codes.
ScenarioRun execute_scenario(const Scenario& s, const RunOptions& opts);

// Runs the scenario's named checks, appending reports.
void run_checks(ScenarioRun& run, const RunOptions& opts);

// Writes FPF dumps, reports.csv and summary.csv under the output dir.
void write_artifacts(const ScenarioRun& run, const std::string& out_dir);

// Exit codes: 0 ok, 2 parse, 3 validation, 4 check failure, 5 solver abort.
int run_scenario_file(const std::string& path, const RunOptions& opts);
int verify_suite_file(const std::string& path, const RunOptions& opts);

}  // namespace frontprop
