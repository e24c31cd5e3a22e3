#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontprop/front_geometry.hpp"
#include "test_util.hpp"

using namespace frontprop;
using namespace fptest;

namespace {

// Rotate a field by 90 degrees (exact on a symmetric grid).
ScalarField rotate90(const ScalarField& f) {
  const Grid& g = f.grid;
  ScalarField out(g, 0.0, f.time);
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) out.at(i, j) = f.at(j, g.n[0] - 1 - i);
  return out;
}

}  // namespace

TEST_CASE("extract_front: disk gives one loop of radius-1 vertices") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;  // positive inside
  FrontSet f = extract_front(u, 0.0);
  CHECK(f.polylines.size() == 1);
  for (const auto& p : f.polylines[0])
    CHECK(std::hypot(p[0], p[1]) == doctest::Approx(1.0).epsilon(0.021));
  CHECK_THROWS_AS(extract_front(u, u.max() + 1.0), Error);  // EmptyLevelSet
}

TEST_CASE("extract_front: two disjoint disks give two loops") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField ind(g, 0.0);
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const double x = g.x(i), y = g.y(j);
      if (std::hypot(x + 0.9, y) <= 0.5 || std::hypot(x - 0.9, y) <= 0.5)
        ind.at(i, j) = 1.0;
    }
  ScalarField u = signed_distance(ind);
  for (double& v : u.v) v = -v;
  FrontSet f = extract_front(u, 0.0);
  CHECK(f.polylines.size() == 2);
  // boundary contact raises TouchesBoundary
  ScalarField big = signed_distance(disk_indicator(g, 1.0));
  for (double& v : big.v) v = -v;
  CHECK_THROWS_AS(extract_front(big, -0.99), Error);
}

TEST_CASE("perimeter: circle, square, empty") {
  Grid g = Grid::centered(2.0, 0.01);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;
  CHECK(perimeter(extract_front(u, 0.0)) == doctest::Approx(2 * M_PI).epsilon(0.01));

  ScalarField sq = signed_distance(square_indicator(g, 1.0));
  for (double& v : sq.v) v = -v;
  CHECK(perimeter(extract_front(sq, 0.0)) == doctest::Approx(8.0).epsilon(0.02));

  CHECK(perimeter(FrontSet{}) == 0.0);
}

TEST_CASE("shoelace area and isoperimetric sanity") {
  Grid g = Grid::centered(2.0, 0.01);
  for (double r : {0.6, 1.0}) {
    ScalarField u = signed_distance(disk_indicator(g, r));
    for (double& v : u.v) v = -v;
    FrontSet f = extract_front(u, 0.0);
    const double area = shoelace_area(f);
    CHECK(area == doctest::Approx(M_PI * r * r).epsilon(0.01));
    const double per = perimeter(f);
    CHECK(per * per >= 4 * M_PI * area * (1 - 5 * g.h));
  }
  ScalarField sq = signed_distance(square_indicator(g, 1.0));
  for (double& v : sq.v) v = -v;
  FrontSet f = extract_front(sq, 0.0);
  CHECK(perimeter(f) * perimeter(f) >= 4 * M_PI * shoelace_area(f) * (1 - 5 * g.h));
}

TEST_CASE("co-area consistency on a slice") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;
  const double a = -0.15, b = 0.15;
  double min_grad = 1e300;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i)
      if (u.at(i, j) >= a && u.at(i, j) <= b)
        min_grad = std::min(min_grad, grad_centered(u, i, j));
  double max_per = 0.0;
  for (double s : {a, 0.0, b}) max_per = std::max(max_per, perimeter(extract_front(u, s)));
  CHECK(band_measure(u, a, b) <= (b - a) / min_grad * max_per * 1.05);
}

TEST_CASE("cone_fits: disk oracle") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;
  const double slack = g.h * max_grad_centered(u);
  CHECK(cone_fits(u, 0.0, {1.0, 0.0}, {-1.0, 0.0}, ConeParams{0.125, 0.5}, slack));
  CHECK_FALSE(cone_fits(u, 0.0, {1.0, 0.0}, {-1.0, 0.0}, ConeParams{0.625, 2.5}, slack));
  CHECK_THROWS_AS(cone_fits(u, 0.0, {1.0, 0.0}, {-1.0, 0.0}, ConeParams{0.5, 0.5}, slack),
                  Error);

  // brute-force check against the analytic disk for a few axes
  auto analytic = [&](Point x, Point nu, ConeParams p) {
    for (int j = 0; j <= 40; ++j) {
      const double lam = p.theta * j / 40.0;
      for (int a = 0; a < 24; ++a) {
        for (double rr : {0.5, 1.0}) {
          const double ang = 2 * M_PI * a / 24;
          const double px = x[0] + lam * nu[0] + lam * p.rho / p.theta * rr * std::cos(ang);
          const double py = x[1] + lam * nu[1] + lam * p.rho / p.theta * rr * std::sin(ang);
          if (std::hypot(px, py) > 1.0 + slack) return false;
        }
      }
    }
    return true;
  };
  CHECK(analytic({1.0, 0.0}, {-1.0, 0.0}, ConeParams{0.125, 0.5}));
  CHECK_FALSE(analytic({1.0, 0.0}, {-1.0, 0.0}, ConeParams{0.625, 2.5}));
}

TEST_CASE("cone_fits: monotone in rho at fixed theta") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;
  const double slack = g.h * max_grad_centered(u);
  // once it fits at some rho, it fits at every smaller rho
  REQUIRE(cone_fits(u, 0.0, {1.0, 0.0}, {-1.0, 0.0}, ConeParams{0.25, 0.5}, slack));
  for (double rho : {0.2, 0.15, 0.1, 0.05})
    CHECK(cone_fits(u, 0.0, {1.0, 0.0}, {-1.0, 0.0}, ConeParams{rho, 0.5}, slack));
  // and at an off-axis vertex with its own normal
  const double s2 = std::sqrt(0.5);
  REQUIRE(cone_fits(u, 0.0, {s2, s2}, {-s2, -s2}, ConeParams{0.25, 0.5}, slack));
  for (double rho : {0.2, 0.1})
    CHECK(cone_fits(u, 0.0, {s2, s2}, {-s2, -s2}, ConeParams{rho, 0.5}, slack));
}

TEST_CASE("band estimate on a constant-velocity run") {
  Grid g = Grid::centered(2.6, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  AnalyticVelocity vel(g, [](double, double, double) { return 1.0; },
                       {1.0, 1.0, 1e-12, Modulus{}});
  EikonalProblem prob{datum, &vel, 1.0, 0.9};
  std::vector<double> recs;
  for (int k = 0; k <= 20; ++k) recs.push_back(k * 0.05);
  SolveOutput out = solve(prob, recs);
  GradientBand band = gradient_band(out.traj);
  EstimateReport rep = band_estimate_check(out.traj, -0.1, 0.1, band, 1.0, 1.0,
                                           datum.du0_inf, datum.field, 0.5);
  CHECK(rep.pass);
  CHECK(rep.rows[0].lhs > 0.1);  // a real accumulated band volume
  CHECK_THROWS_AS(band_estimate_check(out.traj, 0.1, 0.1, band, 1.0, 1.0, datum.du0_inf,
                                      datum.field, 0.5),
                  Error);
  CHECK_THROWS_AS(band_estimate_check(out.traj, -10.0, 0.1, band, 1.0, 1.0, datum.du0_inf,
                                      datum.field, 0.5),
                  Error);
  // tau -> 0: lhs -> 0, rhs stays nonnegative
  EstimateReport small = band_estimate_check(out.traj, -0.1, 0.1, band, 1.0, 1.0,
                                             datum.du0_inf, datum.field, 0.05);
  CHECK(small.rows[0].lhs <= 0.2 * rep.rows[0].lhs);
  CHECK(small.stats["rhs_raw"] >= 0.0);
}

TEST_CASE("cone_certificate: disk coverage, spiked disk gap, rho sweep") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;
  FrontSet f = extract_front(u, 0.0);
  ConeCertificate cert = cone_certificate(u, f, ConeParams{0.125, 0.5}, 16);
  CHECK(cert.coverage == 1.0);

  // a narrow slit cut into the disk breaks the cone property inside it
  ScalarField slit_ind = disk_indicator(g, 1.0);
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i)
      if (g.x(i) > 0.3 && std::abs(g.y(j)) <= 0.03) slit_ind.at(i, j) = 0.0;
  ScalarField su = signed_distance(slit_ind);
  for (double& v : su.v) v = -v;
  FrontSet sf = extract_front(su, 0.0);
  ConeCertificate scert = cone_certificate(su, sf, ConeParams{0.125, 0.5}, 16);
  CHECK(scert.coverage < 1.0);

  double prev_cov = 1.0;
  for (double rho : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    ConeCertificate c = cone_certificate(u, f, ConeParams{rho, 0.5}, 16);
    CHECK(c.coverage <= prev_cov + 1e-12);
    prev_cov = c.coverage;
  }
}

TEST_CASE("cone_parameters formula") {
  Modulus identity{0.0, 1.0};  // w(s) = s
  ConeParams p = cone_parameters(1.0, 2.0, 1.0, identity, 1.0);
  CHECK(p.theta == doctest::Approx(1.0 / 12.0));
  CHECK(p.rho == doctest::Approx(1.0 / 48.0));
  // constant-in-time velocity: the modulus branch drops out
  ConeParams q = cone_parameters(1.0, 2.0, 1.0, Modulus{}, 1.0);
  CHECK(q.theta == doctest::Approx(1.0 / 12.0));
  // C -> infinity collapses theta
  ConeParams tiny = cone_parameters(1.0, 2.0, 1e9, identity, 1.0);
  CHECK(tiny.theta <= 1e-9);
  CHECK_THROWS_AS(cone_parameters(-1.0, 2.0, 1.0, identity, 1.0), Error);
}

TEST_CASE("rigid 90-degree rotation leaves geometry invariant") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField ind(g, 0.0);
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const double x = g.x(i), y = g.y(j);
      if (std::hypot(x - 0.2, y * 1.4) <= 0.8) ind.at(i, j) = 1.0;  // off-center ellipse
    }
  ScalarField u = signed_distance(ind);
  for (double& v : u.v) v = -v;
  ScalarField ur = rotate90(u);
  FrontSet f = extract_front(u, 0.0);
  FrontSet fr = extract_front(ur, 0.0);
  CHECK(std::abs(perimeter(f) - perimeter(fr)) <= 1e-12);
  ConeParams params{0.1, 0.4};
  CHECK(cone_certificate(u, f, params, 16).coverage ==
        cone_certificate(ur, fr, params, 16).coverage);
}

TEST_CASE("interior ball radius of a disk") {
  Grid g = Grid::centered(2.6, 0.02);
  InitialDatum datum = disk_datum(g, 1.0);
  FrontSet f = extract_front(datum.field, 0.0);
  CHECK(interior_ball_radius(datum.field, f) == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("perimeter bound: disk ratio = 2, certificate gate") {
  Grid g = Grid::centered(2.0, 0.02);
  ScalarField u = signed_distance(disk_indicator(g, 1.0));
  for (double& v : u.v) v = -v;
  FrontSet f = extract_front(u, 0.0);
  EstimateReport rep = perimeter_bound_check(f, ConeParams{0.125, 0.5}, 1.8, 6.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.stats["ratio"] == doctest::Approx(2.0).epsilon(0.03));
  CHECK_THROWS_AS(perimeter_bound_check(f, ConeParams{0.125, 0.5}, 1.8, 6.0, 0.9), Error);
}

TEST_CASE("perimeter/volume ratio grows as the disk shrinks, capped by theta") {
  Grid g = Grid::centered(2.0, 0.02);
  const ConeParams params{0.125, 0.5};
  double prev_ratio = 0.0;
  for (double r : {1.5, 1.0, 0.7, 0.55}) {
    ScalarField u = signed_distance(disk_indicator(g, r));
    for (double& v : u.v) v = -v;
    FrontSet f = extract_front(u, 0.0);
    ConeCertificate cert = cone_certificate(u, f, params, 16);
    CHECK(cert.coverage == 1.0);  // still certifiable at theta = 0.5
    EstimateReport rep = perimeter_bound_check(f, params, 1.8, 6.0, cert.coverage);
    CHECK(rep.stats["ratio"] == doctest::Approx(2.0 / r).epsilon(0.05));
    CHECK(rep.stats["ratio"] >= prev_ratio);
    prev_ratio = rep.stats["ratio"];
  }
}
