#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "frontprop/eikonal.hpp"
#include "test_util.hpp"

using namespace frontprop;
using namespace fptest;

namespace {

VelocityBounds const_bounds(double c) { return {c, c, 1e-12, Modulus{}}; }

SolveOutput run_constant(const Grid& g, double radius, double c, double T,
                         const std::vector<double>& recs) {
  InitialDatum datum = disk_datum(g, radius);
  AnalyticVelocity vel(g, [c](double, double, double) { return c; }, const_bounds(c));
  EikonalProblem prob{datum, &vel, T, 0.9};
  return solve(prob, recs);
}

}  // namespace

TEST_CASE("cfl_dt arithmetic") {
  Grid g2 = Grid::centered(1.0, 0.02);
  CHECK(cfl_dt(g2, 1.0, 0.9) == doctest::Approx(0.9 * 0.02 / std::sqrt(2.0)));
  CHECK(cfl_dt(g2, 2.0, 0.9) == doctest::Approx(0.5 * cfl_dt(g2, 1.0, 0.9)));
  Grid g1 = Grid::centered(1.0, 0.1, 1);
  CHECK(cfl_dt(g1, 1.0, 1.0) == doctest::Approx(0.1));
}

TEST_CASE("step: zero velocity is the identity") {
  Grid g = Grid::centered(2.0, 0.05);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  ScalarField u2 = step(u, ScalarField(g, 0.0), 0.01);
  CHECK(sup_norm_difference(u, u2) == 0.0);
}

TEST_CASE("step: errors") {
  Grid g = Grid::centered(2.0, 0.05);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  CHECK_THROWS_AS(step(u, ScalarField(g, 1.0), 1.0), Error);    // CFL
  CHECK_THROWS_AS(step(u, ScalarField(g, -0.1), 0.001), Error); // negative c
}

TEST_CASE("step: radial symmetry is preserved to roundoff") {
  Grid g = Grid::centered(2.0, 0.05);
  ScalarField u(g, 0.0);
  ScalarField c(g, 0.0);
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const double r = g.radius(i, j);
      u.at(i, j) = 1.0 - r;
      c.at(i, j) = 1.0 + 0.3 * r;
    }
  ScalarField u2 = step(u, c, cfl_dt(g, 1.7, 0.9));
  const int m = (g.n[0] - 1) / 2;
  for (int k = 1; k <= m; ++k) {
    CHECK(u2.at(m + k, m) == u2.at(m - k, m));
    CHECK(u2.at(m + k, m) == u2.at(m, m + k));
    CHECK(u2.at(m + k, m) == u2.at(m, m - k));
  }
}

TEST_CASE("solve: constant velocity disk reaches radius 2 (exact solution)") {
  Grid g = Grid::centered(2.6, 0.02);
  SolveOutput out = run_constant(g, 1.0, 1.0, 1.0, {0.0, 0.5, 1.0});
  CHECK(out.traj.times.size() == 3);
  const double r = mean_front_radius(out.traj.slices.back());
  CHECK(std::abs(r - 2.0) <= 2 * g.h);
}

TEST_CASE("solve: time-varying radial velocity against the RK4 oracle") {
  // c(t) = 1 - 0.5 sin t; closed form r(1) = 1 + 1 + 0.5(cos 1 - 1) ~ 1.770
  Grid g = Grid::centered(2.4, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  auto cfun = [](double t) { return 1.0 - 0.5 * std::sin(t); };
  AnalyticVelocity vel(g, [&](double, double, double t) { return cfun(t); },
                       {0.45, 1.0, 1e-12, Modulus{0.0, 0.5}});
  EikonalProblem prob{datum, &vel, 1.0, 0.9};
  SolveOutput out = solve(prob, {1.0});
  const double dt = cfl_dt(g, 1.0, 0.9);
  const double oracle =
      radial_front_oracle([&](double, double t) { return cfun(t); }, 1.0, 1.0, dt);
  CHECK(oracle == doctest::Approx(1.0 + 1.0 + 0.5 * (std::cos(1.0) - 1.0)).epsilon(1e-6));
  CHECK(std::abs(mean_front_radius(out.traj.slices.back()) - oracle) <= 2.5 * g.h);
}

TEST_CASE("solve: T = 0 returns the datum") {
  Grid g = Grid::centered(2.0, 0.05);
  SolveOutput out = run_constant(g, 1.0, 1.0, 0.0, {0.0});
  CHECK(out.traj.times.size() == 1);
  CHECK(sup_norm_difference(out.traj.slices[0], disk_datum(g, 1.0).field) == 0.0);
}

TEST_CASE("solve: domain too small is caught a priori") {
  Grid g = Grid::centered(2.0, 0.05);
  InitialDatum datum = disk_datum(g, 1.0);
  AnalyticVelocity vel(g, [](double, double, double) { return 1.0; }, const_bounds(1.0));
  EikonalProblem prob{datum, &vel, 2.0, 0.9};
  CHECK_THROWS_AS(solve(prob, {2.0}), Error);
}

TEST_CASE("monotonicity in time is exact") {
  Grid g = Grid::centered(2.2, 0.04);
  SolveOutput out = run_constant(g, 1.0, 1.0, 0.5, {0.0, 0.1, 0.3, 0.5});
  for (std::size_t k = 1; k < out.traj.size(); ++k)
    for (std::size_t c = 0; c < g.size(); ++c)
      CHECK(out.traj.slices[k].v[c] >= out.traj.slices[k - 1].v[c]);
}

TEST_CASE("discrete comparison principle is exact") {
  Grid g = Grid::centered(2.0, 0.05);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ScalarField c(g, 0.0);
  for (double& v : c.v) v = 0.5 + unif(rng);  // random velocity shared by both
  ScalarField ua = signed_distance(disk_indicator(g, 0.8));
  for (double& v : ua.v) v = -v;
  ScalarField ub = ua;
  for (std::size_t k = 0; k < ub.v.size(); ++k) ub.v[k] += 0.2 * unif(rng);  // ua <= ub
  const double dt = cfl_dt(g, 1.5, 0.9);
  for (int it = 0; it < 20; ++it) {
    ua = step(ua, c, dt);
    ub = step(ub, c, dt);
    for (std::size_t k = 0; k < ua.v.size(); ++k) CHECK(ua.v[k] <= ub.v[k]);
  }
}

TEST_CASE("grid-translation equivariance") {
  Grid g = Grid::centered(2.0, 0.05);
  ScalarField a = signed_distance(disk_indicator(g, 0.7, 0.0, 0.0));
  ScalarField b = signed_distance(disk_indicator(g, 0.7, 4 * g.h, 0.0));
  for (double& v : a.v) v = -v;
  for (double& v : b.v) v = -v;
  const double dt = cfl_dt(g, 1.0, 0.9);
  ScalarField c(g, 1.0);
  for (int it = 0; it < 10; ++it) {
    a = step(a, c, dt);
    b = step(b, c, dt);
  }
  double worst = 0.0;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 4; i < g.n[0]; ++i)
      worst = std::max(worst, std::abs(b.at(i, j) - a.at(i - 4, j)));
  CHECK(worst == 0.0);
}

TEST_CASE("lipschitz bound check and constructed failure") {
  Grid g = Grid::centered(2.2, 0.04);
  SolveOutput out = run_constant(g, 1.0, 1.0, 0.5, {0.0, 0.25, 0.5});
  EstimateReport rep = check_lipschitz_bound(out.traj, 1e-12,
                                             disk_datum(g, 1.0).du0_inf);
  CHECK(rep.pass);
  Trajectory corrupted = out.traj;
  for (auto& s : corrupted.slices)
    for (double& v : s.v) v *= 10.0;
  CHECK_FALSE(check_lipschitz_bound(corrupted, 1e-12, disk_datum(g, 1.0).du0_inf).pass);
}

TEST_CASE("gradient band: sdf datum has band gradient ~ 1") {
  Grid g = Grid::centered(2.2, 0.02);
  SolveOutput out = run_constant(g, 1.0, 1.0, 0.5, {0.0, 0.25, 0.5});
  GradientBand band = gradient_band(out.traj);
  // the datum's band gradient carries the EDT staircase dip (~0.89)
  CHECK(band.eta_bar == doctest::Approx(1.0).epsilon(0.15));
  CHECK(band.eta > 0.3);
}

TEST_CASE("gradient band: plateau datum shrinks or rejects eta") {
  Grid g = Grid::centered(2.0, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  Trajectory traj;
  traj.times = {0.0};
  ScalarField flat = datum.field;
  // plateau at level 0.01 in a shell around the front
  for (double& v : flat.v)
    if (v > -0.05 && v < 0.05) v = 0.01;
  traj.slices = {flat};
  try {
    GradientBand band = gradient_band(traj);
    CHECK(band.eta < 0.02);  // band cannot reach the plateau
  } catch (const Error& e) {
    CHECK(e.code() == Err::NoBand);
  }
}

TEST_CASE("difference bound (Lemma traj style)") {
  Grid g = Grid::centered(2.6, 0.02);
  SolveOutput a = run_constant(g, 1.0, 1.0, 1.0, {0.0, 0.5, 1.0});
  SolveOutput b = run_constant(g, 1.0, 1.1, 1.0, {0.0, 0.5, 1.0});
  // identical velocities: zero difference
  EstimateReport same = difference_bound_check(a.traj, a.traj, a.vel, a.vel, 0.0, 1.0);
  CHECK(same.pass);
  CHECK(same.rows.back().lhs == 0.0);
  // c = 1 vs 1.1: lhs ~ 0.1 t, rhs = 0.1 t + 10h
  EstimateReport rep = difference_bound_check(a.traj, b.traj, a.vel, b.vel, 0.0,
                                              disk_datum(g, 1.0).du0_inf);
  CHECK(rep.pass);
  CHECK(rep.rows.back().lhs == doctest::Approx(0.1).epsilon(0.15));
}

TEST_CASE("difference bound: half-domain bump") {
  Grid g = Grid::centered(2.6, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  AnalyticVelocity v1(g, [](double, double, double) { return 1.0; }, const_bounds(1.0));
  AnalyticVelocity v2(g, [](double x, double, double) { return x > 0 ? 1.2 : 1.0; },
                      {1.0, 1.2, 40.0, Modulus{}});
  EikonalProblem p1{datum, &v1, 0.5, 0.9};
  EikonalProblem p2{datum, &v2, 0.5, 0.9};
  SolveOutput a = solve(p1, {0.0, 0.25, 0.5});
  SolveOutput b = solve(p2, {0.0, 0.25, 0.5});
  EstimateReport rep =
      difference_bound_check(a.traj, b.traj, a.vel, b.vel, 0.0, datum.du0_inf);
  CHECK(rep.pass);
}

TEST_CASE("finite speed check") {
  Grid g = Grid::centered(2.6, 0.02);
  SolveOutput out = run_constant(g, 1.0, 1.0, 1.0, {0.0, 0.5, 1.0});
  InitialDatum datum = disk_datum(g, 1.0);
  EstimateReport rep = finite_speed_check(out.traj, datum.R0, 1.0);
  CHECK(rep.pass);
  // t = 0: {u0 >= 0} inside B(0, R0)
  CHECK(rep.rows[0].lhs <= datum.R0);
  // c = c_bar/2 leaves slack ~ c_bar t / 2
  SolveOutput slow = run_constant(g, 1.0, 0.5, 1.0, {1.0});
  EstimateReport rep2 = finite_speed_check(slow.traj, datum.R0, 1.0);
  CHECK(rep2.rows[0].slack() == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("increase principle") {
  Grid g = Grid::centered(2.0, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  ScalarField u = datum.field;
  EstimateReport rep = increase_principle_check(u, datum.eta0, 0.2);
  CHECK(rep.pass);
  CHECK_THROWS_AS(increase_principle_check(u, datum.eta0, datum.eta0), Error);

  // downward cone with slope exactly eta0: for x at depth delta the
  // reachable peak is exactly u(x) + delta, so the bound saturates within
  // grid tolerance
  ScalarField cone = ScalarField::from_function(
      g, [](double x, double y) { return -0.5 * std::hypot(x, y); });
  EstimateReport sat = increase_principle_check(cone, 0.5, 0.2);
  CHECK(sat.pass);
  CHECK(std::abs(sat.stats["worst_slack"]) <= 4 * g.h);
}

TEST_CASE("convergence order: halving h at least halves the front error") {
  double prev_err = -1.0;
  for (double h : {0.04, 0.02, 0.01}) {
    Grid g = Grid::centered(2.4, h);
    SolveOutput out = run_constant(g, 1.0, 1.0, 1.0, {1.0});
    const double err = std::abs(mean_front_radius(out.traj.slices.back()) - 2.0);
    if (prev_err > 0) CHECK(err <= 0.5 * prev_err * (1 + 1e-9));
    prev_err = err;
  }
}
