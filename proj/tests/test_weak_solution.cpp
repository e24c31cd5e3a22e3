#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontprop/weak_solution.hpp"
#include "test_util.hpp"

using namespace frontprop;
using namespace fptest;

namespace {

DislocationModel s2_model(const Grid& g, double T, double R0) {
  DislocationModel m;
  m.kernel = disk_kernel(1.0, 0.25, g.h);
  m.c1 = ScalarField(g, 1.0);
  m.r_work = R0;
  validate_h3(m);
  m.r_work = R0 + m.derived.c_hi * T;
  validate_h3(m);
  return m;
}

FnModel s3_model(const Grid& g, double T) {
  FnModel m;
  m.alpha = affine_clamped(0.5, 1.0, 0.5, 1.5);
  m.gplus = [](double) { return 1.0; };
  m.gminus = [](double) { return 0.1; };
  m.c_lo = 0.5;
  m.c_hi = 1.5;
  m.lip_alpha = 1.0;
  m.g_lo = 0.1;
  m.g_hi = 1.0;
  m.lip_g = 0.0;
  m.v0 = ScalarField(g, 0.0);
  m.dv0_inf = 0.0;
  m.horizon = T;
  return m;
}

WeakSolveConfig make_config(const InitialDatum& datum, double T, int records = 6) {
  WeakSolveConfig cfg;
  cfg.datum = datum;
  cfg.horizon = T;
  cfg.tol_chi = 1e-6;
  cfg.max_iter = 30;
  for (int k = 0; k < records; ++k) cfg.record_times.push_back(T * k / (records - 1));
  return cfg;
}

}  // namespace

TEST_CASE("decoupled law converges immediately and matches solve()") {
  Grid g = Grid::centered(2.2, 0.04);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m;
  m.kernel = disk_kernel(0.5, 0.0, g.h);  // zero kernel: velocity ignores chi
  m.c1 = ScalarField(g, 1.0);
  m.r_work = 2.0;
  validate_h3(m);
  DislocationLaw law(m);

  WeakSolveConfig cfg = make_config(datum, 0.5);
  PhaseIndicator seed = PhaseIndicator::single(indicator_of_superlevel(datum.field), 0.5);
  WeakSolution sol = picard_solve(cfg, law, seed);
  CHECK(sol.converged);
  CHECK(sol.iterations <= 2);
  CHECK(sol.residual == 0.0);

  AnalyticVelocity vel(g, [](double, double, double) { return 1.0; },
                       {1.0, 1.0, 1e-12, Modulus{}});
  EikonalProblem prob{datum, &vel, 0.5, 0.9};
  SolveOutput ref = solve(prob, cfg.record_times);
  for (std::size_t k = 0; k < ref.traj.size(); ++k)
    CHECK(sup_norm_difference(sol.traj.slices[k], ref.traj.slices[k]) == 0.0);
}

TEST_CASE("dislocation toy: converges, front bracketed by constant-speed runs") {
  Grid g = Grid::centered(2.5, 0.04);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m = s2_model(g, 0.5, datum.R0);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.5);
  cfg.tol_chi = 1e-3;
  WeakSolution sol = picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.5));
  CHECK(sol.converged);
  CHECK(sol.iterations <= 20);
  CHECK(sol.sandwich_violation == 0.0);
  const double r = mean_front_radius(sol.traj.slices.back());
  CHECK(r > 1.0 + m.derived.c_lo * 0.5 - g.h);
  CHECK(r < 1.0 + m.derived.c_hi * 0.5 + g.h);
  // the physical kernel is nonnegative, so the realized speed is >= c1 = 1
  CHECK(r > 1.0 + 1.0 * 0.5 - 2 * g.h);
}

TEST_CASE("fn toy: converges, front bracketed by alpha range") {
  Grid g = Grid::centered(4.6, 0.05);
  InitialDatum datum = disk_datum(g, 1.0);
  FnModel m = s3_model(g, 0.5);
  FnLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.5);
  cfg.tol_chi = 1e-3;
  WeakSolution sol = picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.5));
  CHECK(sol.converged);
  const double r = mean_front_radius(sol.traj.slices.back());
  CHECK(r > 1.0 + 0.5 * 0.5 - g.h);
  CHECK(r < 1.0 + 1.5 * 0.5 + g.h);
}

TEST_CASE("classicality: thin band passes, fattened band fails") {
  Grid g = Grid::centered(2.2, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m;
  m.kernel = disk_kernel(0.5, 0.0, g.h);
  m.c1 = ScalarField(g, 1.0);
  m.r_work = 2.0;
  validate_h3(m);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.5);
  WeakSolution sol = picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.5));
  CHECK(classicality_check(sol).pass);

  WeakSolution fat = sol;
  for (auto& slice : fat.traj.slices)
    for (double& v : slice.v)
      if (std::abs(v) < 0.1) v = 0.0;  // fatten the zero set
  CHECK_FALSE(classicality_check(fat).pass);
}

TEST_CASE("identical seeds give bitwise identical outputs") {
  Grid g = Grid::centered(2.4, 0.05);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m = s2_model(g, 0.4, datum.R0);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.4);
  PhaseIndicator seed = PhaseIndicator::constant(g, 0.0, 0.4);
  WeakSolution a = picard_solve(cfg, law, seed);
  WeakSolution b = picard_solve(cfg, law, seed);
  REQUIRE(a.traj.size() == b.traj.size());
  for (std::size_t k = 0; k < a.traj.size(); ++k)
    CHECK(sup_norm_difference(a.traj.slices[k], b.traj.slices[k]) == 0.0);
  CHECK(a.residual == b.residual);
}

TEST_CASE("uniqueness experiment: extreme seeds meet at one fixed point") {
  Grid g = Grid::centered(2.5, 0.04);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m = s2_model(g, 0.5, datum.R0);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.5);
  cfg.tol_chi = 1e-4;
  UniquenessResult uq =
      uniqueness_experiment(cfg, law, PhaseIndicator::constant(g, 0.0, 0.5),
                            PhaseIndicator::constant(g, 1.0, 0.5));
  CHECK(uq.report.pass);

  ContractionInputs in;
  in.c_lo = m.derived.c_lo;
  in.c_hi = m.derived.c_hi;
  in.lip_x = m.derived.lip_x;
  in.du0_inf = datum.du0_inf;
  GradientBand band = gradient_band(uq.a.traj);
  in.eta_bar = band.eta_bar;
  in.horizon = 0.5;
  EstimateReport rep;
  ContractionDiag diag = contraction_diagnostics(uq.a, uq.b, datum, 0.05, in, &rep);
  CHECK(diag.delta_tau <= 5 * g.h * datum.du0_inf);
  // step-4 inequality delta <= L psi delta + slack always holds
  CHECK(rep.rows[1].pass);
  // psi_tau shrinks as tau does (the paper's tau -> 0 claim)
  EstimateReport tmp;
  ContractionDiag d1 = contraction_diagnostics(uq.a, uq.b, datum, 0.02, in, &tmp);
  ContractionDiag d2 = contraction_diagnostics(uq.a, uq.b, datum, 0.005, in, &tmp);
  CHECK(d1.psi_tau <= diag.psi_tau + 1e-12);
  CHECK(d2.psi_tau <= d1.psi_tau + 1e-12);
  CHECK(d2.psi_tau < 0.5);
}

TEST_CASE("contraction diagnostics: identical solutions are trivial") {
  Grid g = Grid::centered(2.4, 0.05);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m = s2_model(g, 0.4, datum.R0);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.4);
  WeakSolution sol = picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.4));
  ContractionInputs in;
  in.c_lo = m.derived.c_lo;
  in.c_hi = m.derived.c_hi;
  in.lip_x = m.derived.lip_x;
  in.du0_inf = datum.du0_inf;
  in.eta_bar = 1.0;
  in.horizon = 0.4;
  ContractionDiag diag = contraction_diagnostics(sol, sol, datum, 0.05, in, nullptr);
  CHECK(diag.trivial);
  CHECK(diag.delta_tau == 0.0);
}

TEST_CASE("damped update also reaches the fixed point") {
  Grid g = Grid::centered(2.4, 0.05);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m = s2_model(g, 0.4, datum.R0);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.4);
  cfg.damping = 0.7;
  cfg.tol_chi = 1e-3;
  cfg.max_iter = 60;
  WeakSolution damped = picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.4));
  CHECK(damped.converged);
  cfg.damping = 1.0;
  WeakSolution plain = picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.4));
  CHECK(sup_norm_difference(damped.traj.slices.back(), plain.traj.slices.back()) <=
        3 * g.h);
}

TEST_CASE("picard configuration errors") {
  Grid g = Grid::centered(2.4, 0.05);
  InitialDatum datum = disk_datum(g, 1.0);
  DislocationModel m = s2_model(g, 0.4, datum.R0);
  DislocationLaw law(m);
  WeakSolveConfig cfg = make_config(datum, 0.4);
  cfg.tol_chi = -1.0;
  CHECK_THROWS_AS(picard_solve(cfg, law, PhaseIndicator::constant(g, 0.0, 0.4)), Error);
  cfg = make_config(datum, 0.4);
  // seed frames not covering [0, T]
  PhaseIndicator bad = PhaseIndicator::constant(g, 0.0, 0.1);
  CHECK_THROWS_AS(picard_solve(cfg, law, bad), Error);
}
