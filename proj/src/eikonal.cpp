#include "frontprop/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontprop/par.hpp"

namespace frontprop {

double Modulus::operator()(double s) const {
  return sqrt_coef * std::sqrt(std::max(0.0, s)) + lin_coef * s;
}

double Modulus::inverse(double y) const {
  if (y <= 0) return 0.0;
  if (sqrt_coef <= 0 && lin_coef <= 0) return std::numeric_limits<double>::infinity();
  if (sqrt_coef <= 0) return y / lin_coef;
  if (lin_coef <= 0) {
    double r = y / sqrt_coef;
    return r * r;
  }
  // a sqrt(s) + b s = y with a,b > 0: quadratic in sqrt(s).
  const double a = sqrt_coef, b = lin_coef;
  const double root = (-a + std::sqrt(a * a + 4 * b * y)) / (2 * b);
  return root * root;
}

ScalarField AnalyticVelocity::at(double t) {
  ScalarField c = ScalarField::from_function(
      grid_, [&](double x, double y) { return c_(x, y, t); }, t);
  return c;
}

std::size_t Trajectory::index_at(double t) const {
  require(!times.empty(), Err::BadConfig, "empty trajectory");
  std::size_t k = 0;
  while (k + 1 < times.size() && times[k + 1] <= t + 1e-12) ++k;
  return k;
}

double cfl_dt(const Grid& grid, double c_bar, double safety) {
  require(c_bar > 0, Err::BadConfig, "cfl_dt needs c_bar > 0");
  return safety * grid.h / (std::sqrt(static_cast<double>(grid.dim)) * c_bar);
}

ScalarField step(const ScalarField& u, const ScalarField& c, double dt) {
  const Grid& g = u.grid;
  require(c.grid.same_as(g), Err::GridMismatch, "velocity grid differs");

  double c_max = 0.0, c_min = std::numeric_limits<double>::infinity();
  for (double x : c.v) {
    c_max = std::max(c_max, x);
    c_min = std::min(c_min, x);
  }
  require(c_min >= 0, Err::NegativeVelocity, "step requires c >= 0");
  if (c_max > 0)
    require(dt <= cfl_dt(g, c_max, 1.0) * (1 + 1e-12), Err::CflViolation,
            "dt exceeds the CFL bound");

  const int nx = g.n[0], ny = g.n[1];
  ScalarField out(g, 0.0, u.time + dt);
  for_blocks(g.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int i = static_cast<int>(k % nx);
      const int j = static_cast<int>(k / nx);
      const double uc = u.v[k];
      // Upwind slopes toward higher neighbor values.
      double mx = 0.0;
      if (i > 0) mx = std::max(mx, u.at(i - 1, j) - uc);
      if (i < nx - 1) mx = std::max(mx, u.at(i + 1, j) - uc);
      double grad_sq = mx * mx;
      if (g.dim == 2) {
        double my = 0.0;
        if (j > 0) my = std::max(my, u.at(i, j - 1) - uc);
        if (j < ny - 1) my = std::max(my, u.at(i, j + 1) - uc);
        grad_sq += my * my;
      }
      out.v[k] = uc + dt * c.v[k] * std::sqrt(grad_sq) / g.h;
    }
  });
  return out;
}

SolveOutput solve(const EikonalProblem& problem, const std::vector<double>& record_times) {
  require(problem.velocity != nullptr, Err::BadConfig, "no velocity source");
  const Grid& g = problem.u0.field.grid;
  const double T = problem.horizon;
  const VelocityBounds vb = problem.velocity->bounds();
  require(vb.c_lo > 0 && vb.c_hi >= vb.c_lo, Err::BadConfig,
          "velocity bounds must satisfy 0 < c_lo <= c_hi");
  for (std::size_t k = 0; k < record_times.size(); ++k) {
    require(record_times[k] >= 0 && record_times[k] <= T + 1e-12, Err::BadConfig,
            "record time outside [0, T]");
    if (k > 0)
      require(record_times[k] > record_times[k - 1], Err::BadConfig,
              "record times must increase");
  }
  // Finite speed of propagation makes the domain requirement decidable
  // up front: the front stays in B(0, R0 + c_hi T).
  require(problem.u0.front_radius + vb.c_hi * T + 4 * g.h <= g.inscribed_radius(),
          Err::DomainTooSmall, "front may reach the grid boundary before T");

  SolveOutput out;
  problem.velocity->reset();

  ScalarField u = problem.u0.field;
  u.time = 0.0;
  std::size_t next_rec = 0;
  auto record = [&](const ScalarField& field, const ScalarField& cfield, double t_exact) {
    out.traj.times.push_back(t_exact);
    out.traj.slices.push_back(field);
    out.traj.slices.back().time = t_exact;
    out.vel.times.push_back(t_exact);
    out.vel.slices.push_back(cfield);
    out.vel.slices.back().time = t_exact;
  };

  const double dt0 = cfl_dt(g, vb.c_hi, problem.cfl_safety);
  double t = 0.0;
  ScalarField c0 = problem.velocity->at(0.0);
  if (next_rec < record_times.size() && record_times[next_rec] <= 1e-14) {
    record(u, c0, 0.0);
    ++next_rec;
  }
  ScalarField c = c0;
  while (t < T - 1e-12 && next_rec <= record_times.size()) {
    const double dt = std::min(dt0, T - t);
    if (t > 0.0) c = problem.velocity->at(t);
    ScalarField u_next = step(u, c, dt);
    while (next_rec < record_times.size() && record_times[next_rec] <= t + dt + 1e-12) {
      const double rt = std::min(record_times[next_rec], t + dt);
      const double w = (rt - t) / dt;
      ScalarField rec(g, 0.0, rt);
      for (std::size_t k = 0; k < rec.v.size(); ++k)
        rec.v[k] = (1 - w) * u.v[k] + w * u_next.v[k];
      record(rec, c, rt);
      ++next_rec;
    }
    u = std::move(u_next);
    t += dt;
    // Belt-and-braces runtime guard on the 2-cell boundary ring.
    const int nx = g.n[0], ny = g.n[1];
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const bool ring = i < 2 || i >= nx - 2 || (g.dim == 2 && (j < 2 || j >= ny - 2));
        if (ring && u.at(i, j) >= 0)
          fail(Err::DomainTooSmall, "front reached the boundary ring");
      }
  }
  return out;
}

EstimateReport check_lipschitz_bound(const Trajectory& traj, double C, double du0_inf) {
  require(!traj.times.empty(), Err::BadConfig, "empty trajectory");
  EstimateReport rep;
  rep.name = "lipschitz_bound";
  const double T = traj.times.back();
  const double h = traj.slices.front().grid.h;
  const double rhs = std::exp(C * T) * du0_inf;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double lhs = max_grad_centered(traj.slices[k]);
    rep.add_row(traj.times[k], lhs, rhs * (1 + 5 * h));
  }
  rep.stats["rhs_raw"] = rhs;
  return rep;
}

namespace {

// Min centered |Du| over {|u| < eta/2}; +inf when the band is empty.
double min_band_gradient(const ScalarField& u, double eta) {
  const Grid& g = u.grid;
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i)
      if (std::abs(u.at(i, j)) < 0.5 * eta)
        m = std::min(m, grad_centered(u, i, j));
  return m;
}

struct BandFit {
  bool feasible = false;
  double eta_bar = 0.0;
  double gamma_hat = 0.0;
};

BandFit fit_band(const Trajectory& traj, double eta) {
  BandFit fit;
  const double target = std::sqrt(2.0 * eta);
  double eta_bar = std::numeric_limits<double>::infinity();
  double gamma = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double m = min_band_gradient(traj.slices[k], eta);
    if (!std::isfinite(m)) continue;  // empty band: vacuous at this slice
    if (m <= 0) return fit;
    const double t = traj.times[k];
    if (t <= 1e-14) {
      if (m < target * (1 - 1e-9)) return fit;
    } else if (m < target) {
      gamma = std::max(gamma, 2.0 / t * std::log(target / m));
    }
    eta_bar = std::min(eta_bar, m);
  }
  if (!std::isfinite(eta_bar)) return fit;  // band empty everywhere
  fit.feasible = true;
  fit.eta_bar = eta_bar;
  fit.gamma_hat = gamma;
  return fit;
}

}  // namespace

GradientBand gradient_band(const Trajectory& traj) {
  require(!traj.times.empty(), Err::BadConfig, "empty trajectory");
  double sup_u = 0.0;
  for (const auto& s : traj.slices) sup_u = std::max(sup_u, std::max(std::abs(s.min()), s.max()));
  double lo = 0.0, hi = 2.0 * sup_u + 1.0;
  BandFit best;
  double best_eta = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    BandFit fit = fit_band(traj, mid);
    if (fit.feasible) {
      lo = mid;
      best = fit;
      best_eta = mid;
    } else {
      hi = mid;
    }
  }
  // A feasible eta whose band is empty at every slice certifies nothing.
  require(best.feasible && best.eta_bar > 0 && std::isfinite(best.eta_bar) && best_eta > 1e-9,
          Err::NoBand, "no positive eta passes the band inequality");
  GradientBand band;
  band.eta = best_eta;
  band.eta_bar = best.eta_bar;
  band.gamma_hat = best.gamma_hat;
  return band;
}

EstimateReport difference_bound_check(const Trajectory& traj1, const Trajectory& traj2,
                                      const Trajectory& vel1, const Trajectory& vel2,
                                      double C, double du0_inf) {
  require(traj1.size() == traj2.size() && traj1.size() == vel1.size() &&
              vel1.size() == vel2.size(),
          Err::GridMismatch, "trajectories have different record grids");
  EstimateReport rep;
  rep.name = "difference_bound";
  const double h = traj1.slices.front().grid.h;
  double integral = 0.0;
  double prev_gap = 0.0, prev_t = 0.0;
  for (std::size_t k = 0; k < traj1.size(); ++k) {
    const double t = traj1.times[k];
    const double gap = sup_norm_difference(vel1.slices[k], vel2.slices[k]);
    if (k > 0) integral += 0.5 * (gap + prev_gap) * (t - prev_t);
    prev_gap = gap;
    prev_t = t;
    const double lhs = sup_norm_difference(traj1.slices[k], traj2.slices[k]);
    const double rhs = du0_inf * std::exp(C * t) * integral + 10 * h;
    rep.add_row(t, lhs, rhs);
  }
  return rep;
}

EstimateReport finite_speed_check(const Trajectory& traj, double R0, double c_bar) {
  EstimateReport rep;
  rep.name = "finite_speed";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const ScalarField& u = traj.slices[k];
    const Grid& g = u.grid;
    double r_max = 0.0;
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        if (u.at(i, j) >= 0) r_max = std::max(r_max, g.radius(i, j));
    rep.add_row(traj.times[k], r_max, R0 + c_bar * traj.times[k] + 2 * g.h);
  }
  return rep;
}

EstimateReport increase_principle_check(const ScalarField& u, double eta0, double delta) {
  require(delta < 0.5 * eta0, Err::BadDelta, "requires delta < eta0/2");
  require(delta > 0, Err::BadDelta, "requires delta > 0");
  const Grid& g = u.grid;
  const double radius = 2.0 * delta / eta0;
  const int rc = static_cast<int>(std::ceil(radius / g.h)) + 1;
  const double slack = 2.0 * g.h * max_grad_centered(u);

  EstimateReport rep;
  rep.name = "increase_principle";
  double worst = std::numeric_limits<double>::infinity();
  long checked = 0;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const double uc = u.at(i, j);
      if (uc < -delta || uc > delta) continue;
      ++checked;
      double best = -std::numeric_limits<double>::infinity();
      for (int dj = -rc; dj <= rc; ++dj) {
        if (g.dim == 1 && dj != 0) continue;
        const int jj = j + dj;
        if (jj < 0 || jj >= g.n[1]) continue;
        for (int di = -rc; di <= rc; ++di) {
          const int ii = i + di;
          if (ii < 0 || ii >= g.n[0]) continue;
          if (g.h * std::hypot(static_cast<double>(di), static_cast<double>(dj)) > radius)
            continue;
          best = std::max(best, u.at(ii, jj));
        }
      }
      worst = std::min(worst, best - (uc + delta - slack));
    }
  if (checked == 0) {
    rep.add_row(u.time, 0.0, 0.0, true);
    rep.stats["checked_cells"] = 0;
    return rep;
  }
  rep.add_row(u.time, -worst, 0.0, worst >= 0);
  rep.stats["checked_cells"] = static_cast<double>(checked);
  rep.stats["worst_slack"] = worst;
  return rep;
}

}  // namespace frontprop
