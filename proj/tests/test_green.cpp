#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontprop/green.hpp"
#include "test_util.hpp"

using namespace frontprop;
using namespace fptest;

TEST_CASE("heat kernel spot values") {
  // N = 2, s = 1/(4 pi), y = 0: G = 1 exactly
  CHECK(heat_kernel(0.0, 1.0 / (4 * M_PI), 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(heat_kernel(1.0, 0.25, 2) ==
        doctest::Approx(std::exp(-1.0) / M_PI).epsilon(1e-12));
  CHECK_THROWS_AS(heat_kernel(0.0, 0.0, 2), Error);
}

TEST_CASE("I(N): exact value for N=1, analytic oracle for N=2") {
  CHECK(i_n_constant(1) == 4.0);
  // Closed form of int_0^1 (sqrt(2|log u|)+1)^2 + 1)/sqrt(u) du via the
  // gamma function: 12 + 4 sqrt(pi).
  const double exact = 12.0 + 4.0 * std::sqrt(M_PI);
  CHECK(i_n_constant(2) == doctest::Approx(exact).epsilon(1e-7));
}

TEST_CASE("phi: empty occupancy gives zero") {
  Grid g = Grid::centered(2.0, 0.05);
  PhaseIndicator K = PhaseIndicator::constant(g, 0.0, 1.0);
  PhiEvaluator phi(K);
  CHECK(phi.phi(0.0, 0.0, 0.5, 0.0) == 0.0);
  CHECK(phi.phi(0.3, -0.2, 0.5, 0.1) == 0.0);
  CHECK(phi.phi(0.0, 0.0, 0.0, 0.0) == 0.0);  // t = 0 convention
}

TEST_CASE("phi: huge static disk absorbs all kernel mass") {
  Grid g = Grid::centered(12.0, 0.1);
  PhaseIndicator K = PhaseIndicator::single(disk_indicator(g, 10.0), 1.0);
  PhiEvaluator phi(K);
  CHECK(phi.phi(0.0, 0.0, 0.1, 0.0) == doctest::Approx(0.1).epsilon(1e-4));
}

TEST_CASE("phi: static unit disk against the polar quadrature oracle") {
  Grid g = Grid::centered(3.0, 0.02);
  PhaseIndicator K = PhaseIndicator::single(disk_indicator(g, 1.0), 1.0);
  PhiEvaluator phi(K, 96);
  // For x = 0, the spatial integral has the closed form
  // 1 - exp(-a^2/(4u)), a = 1 + r; integrate in u by fine quadrature.
  auto oracle = [&](double t, double r) {
    const double a = 1.0 + r;
    const int n = 20000;
    double acc = 0.0;
    for (int q = 1; q <= n; ++q) {
      const double u = t * (q - 0.5) / n;
      acc += (1.0 - std::exp(-a * a / (4 * u))) * (t / n);
    }
    return acc;
  };
  const double t = 0.25;
  for (double r : {0.0, 0.05, 0.1})
    CHECK(phi.phi(0.0, 0.0, t, r) == doctest::Approx(oracle(t, r)).epsilon(0.01));

  // difference quotient roughly constant in r (annulus mass / r)
  const double base = phi.phi(0.0, 0.0, t, 0.0);
  const double q1 = (phi.phi(0.0, 0.0, t, 0.05) - base) / 0.05;
  const double q2 = (phi.phi(0.0, 0.0, t, 0.1) - base) / 0.1;
  CHECK(q1 == doctest::Approx(q2).epsilon(0.25));
  CHECK(q1 > 0.0);
}

TEST_CASE("phi: monotone in r and t, mass bound") {
  Grid g = Grid::centered(2.5, 0.04);
  PhaseIndicator K = PhaseIndicator::single(disk_indicator(g, 0.8), 1.0);
  PhiEvaluator phi(K);
  double prev = -1.0;
  for (double r : {0.0, 0.05, 0.1, 0.2}) {
    const double val = phi.phi(0.4, 0.1, 0.3, r);
    CHECK(val >= prev - 1e-12);
    prev = val;
  }
  prev = -1.0;
  for (double t : {0.1, 0.2, 0.4}) {
    const double val = phi.phi(0.4, 0.1, t, 0.0);
    CHECK(val >= prev - 1e-12);
    CHECK(val <= t + 1e-6);  // G has unit spatial mass
    prev = val;
  }
}

TEST_CASE("lipschitz_in_r_check: gate and measured quotient") {
  Grid g = Grid::centered(2.5, 0.04);
  PhaseIndicator K = PhaseIndicator::single(disk_indicator(g, 1.0), 1.0);
  PhiEvaluator phi(K, 64);
  std::vector<std::array<double, 2>> xs{{0.0, 0.0}, {1.0, 0.0}};
  std::vector<double> ts{0.25, 0.5};
  std::vector<double> rs{0.0, 0.05, 0.1};
  CHECK_THROWS_AS(lipschitz_in_r_check(phi, 0.5, xs, ts, rs, 2.0), Error);
  EstimateReport rep = lipschitz_in_r_check(phi, 1.0, xs, ts, rs, 2.0);
  CHECK(rep.pass);
  CHECK(rep.stats["lambda0_hat"] > 0.0);
  CHECK(rep.stats["lambda0_hat"] <= 2.0);
  // t samples must respect tau < 1
  std::vector<double> bad_ts{1.5};
  CHECK_THROWS_AS(lipschitz_in_r_check(phi, 1.0, xs, bad_ts, rs, 2.0), Error);
}
