#include "frontprop/reachability.hpp"

#include <algorithm>
#include <cmath>

#include "frontprop/convolution.hpp"

namespace frontprop {

MinimalTimeField minimal_time(const Trajectory& traj) {
  require(traj.size() >= 1, Err::BadConfig, "empty trajectory");
  const Grid& g = traj.slices.front().grid;
  MinimalTimeField mt;
  mt.v = ScalarField(g, kNeverReached, traj.times.back());

  for (std::size_t k = 1; k < traj.size(); ++k) {
    for (std::size_t c = 0; c < g.size(); ++c) {
      const double drop = traj.slices[k - 1].v[c] - traj.slices[k].v[c];
      require(drop <= 1e-12, Err::NotMonotone,
              "u decreases between slices; not a c > 0 run");
    }
  }
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (traj.slices[0].v[c] >= 0) {
      mt.v.v[c] = 0.0;
      continue;
    }
    for (std::size_t k = 1; k < traj.size(); ++k) {
      const double u_prev = traj.slices[k - 1].v[c];
      const double u_cur = traj.slices[k].v[c];
      if (u_cur >= 0) {
        const double lam = u_cur > u_prev ? (0.0 - u_prev) / (u_cur - u_prev) : 1.0;
        mt.v.v[c] = traj.times[k - 1] + lam * (traj.times[k] - traj.times[k - 1]);
        break;
      }
    }
  }
  return mt;
}

EstimateReport lipschitz_check(const MinimalTimeField& mt, double c_lo) {
  require(c_lo > 0, Err::BadConfig, "lipschitz check needs c_lo > 0");
  const Grid& g = mt.v.grid;
  double worst = 0.0;
  bool any = false;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const double v = mt.v.at(i, j);
      if (v >= kNeverReached) continue;
      any = true;
      if (i + 1 < g.n[0] && mt.v.at(i + 1, j) < kNeverReached)
        worst = std::max(worst, std::abs(mt.v.at(i + 1, j) - v) / g.h);
      if (j + 1 < g.n[1] && mt.v.at(i, j + 1) < kNeverReached)
        worst = std::max(worst, std::abs(mt.v.at(i, j + 1) - v) / g.h);
    }
  require(any, Err::BadConfig, "no reached cells");
  EstimateReport rep;
  rep.name = "minimal_time_lipschitz";
  rep.add_row(mt.v.time, worst, 1.0 / c_lo + 10 * g.h / (c_lo * c_lo));
  return rep;
}

EstimateReport duality_check(const MinimalTimeField& mt, const Trajectory& traj) {
  const Grid& g = mt.v.grid;
  EstimateReport rep;
  rep.name = "arrival_duality";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times[k];
    const ScalarField& u = traj.slices[k];
    long violations = 0;
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        const bool by_time = mt.v.at(i, j) <= t;
        const bool by_level = u.at(i, j) >= 0;
        if (by_time == by_level) continue;
        // Mismatches sitting on the discrete front (a sign change among
        // the 8 neighbors) are the "up to one cell" allowance.
        bool at_front = false;
        for (int dj = -1; dj <= 1 && !at_front; ++dj)
          for (int di = -1; di <= 1 && !at_front; ++di) {
            const int ii = i + di, jj = j + dj;
            if (ii < 0 || ii >= g.n[0] || jj < 0 || jj >= g.n[1]) continue;
            if ((u.at(ii, jj) >= 0) != by_level) at_front = true;
          }
        if (!at_front) ++violations;
      }
    rep.add_row(t, static_cast<double>(violations), 0.0, violations == 0);
  }
  return rep;
}

SmoothedSliceVelocity::SmoothedSliceVelocity(const Trajectory& velocity_slices,
                                             VelocityBounds bounds)
    : bounds_(bounds) {
  require(!velocity_slices.times.empty(), Err::BadConfig, "no velocity slices");
  const double h = velocity_slices.slices.front().grid.h;
  // Mollifier width 2h: variance (2h)^2 means s = 2h^2 for G(., s).
  const ScalarField kernel =
      gaussian_kernel(2.0 * h * h, h, velocity_slices.slices.front().grid.dim, 4.0);
  smoothed_.times = velocity_slices.times;
  for (const auto& slice : velocity_slices.slices)
    smoothed_.slices.push_back(convolve(slice, kernel));
}

double SmoothedSliceVelocity::c(double x, double y, double t) const {
  const std::size_t k = smoothed_.index_at(t);
  return smoothed_.slices[k].interp(x, y);
}

Point2 SmoothedSliceVelocity::dc(double x, double y, double t) const {
  const std::size_t k = smoothed_.index_at(t);
  const ScalarField& s = smoothed_.slices[k];
  const double h = s.grid.h;
  Point2 g;
  g.x = (s.interp(x + h, y) - s.interp(x - h, y)) / (2 * h);
  if (s.grid.dim == 2) g.y = (s.interp(x, y + h) - s.interp(x, y - h)) / (2 * h);
  return g;
}

ExtremalTrajectory pontryagin_integrate(Point2 x_end, Point2 p_end,
                                        const SpatialVelocity& vel, double t_end,
                                        double dt) {
  require(t_end > 0 && dt > 0, Err::BadConfig, "needs t_end > 0, dt > 0");
  const double p_norm0 = std::hypot(p_end.x, p_end.y);
  require(p_norm0 > 1e-12, Err::StepFailure, "p_end must be nonzero");

  struct State {
    Point2 x, p;
  };
  auto rhs = [&](const State& s, double t) {
    const double pn = std::hypot(s.p.x, s.p.y);
    require(pn > 1e-12, Err::StepFailure, "adjoint collapsed to zero");
    const double cv = vel.c(s.x.x, s.x.y, t);
    const Point2 g = vel.dc(s.x.x, s.x.y, t);
    State d;
    d.x = {cv * s.p.x / pn, cv * s.p.y / pn};
    d.p = {-g.x * pn, -g.y * pn};
    return d;
  };

  const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt)));
  const double hstep = -t_end / steps;  // backward

  std::vector<double> times;
  std::vector<State> states;
  State s{x_end, p_end};
  times.push_back(t_end);
  states.push_back(s);
  double t = t_end;
  for (int k = 0; k < steps; ++k) {
    const State k1 = rhs(s, t);
    auto advance = [&](const State& base, const State& d, double f) {
      State out;
      out.x = {base.x.x + f * d.x.x, base.x.y + f * d.x.y};
      out.p = {base.p.x + f * d.p.x, base.p.y + f * d.p.y};
      return out;
    };
    const State k2 = rhs(advance(s, k1, 0.5 * hstep), t + 0.5 * hstep);
    const State k3 = rhs(advance(s, k2, 0.5 * hstep), t + 0.5 * hstep);
    const State k4 = rhs(advance(s, k3, hstep), t + hstep);
    s.x.x += hstep / 6.0 * (k1.x.x + 2 * k2.x.x + 2 * k3.x.x + k4.x.x);
    s.x.y += hstep / 6.0 * (k1.x.y + 2 * k2.x.y + 2 * k3.x.y + k4.x.y);
    s.p.x += hstep / 6.0 * (k1.p.x + 2 * k2.p.x + 2 * k3.p.x + k4.p.x);
    s.p.y += hstep / 6.0 * (k1.p.y + 2 * k2.p.y + 2 * k3.p.y + k4.p.y);
    t += hstep;
    times.push_back(t);
    states.push_back(s);
  }

  ExtremalTrajectory out;
  out.dt = -hstep;
  for (std::size_t k = times.size(); k-- > 0;) {
    const double tk = std::max(0.0, times[k]);
    out.times.push_back(tk);
    out.x.push_back(states[k].x);
    out.p.push_back(states[k].p);
    const State d = rhs(states[k], tk);
    out.xdot.push_back(d.x);
  }
  return out;
}

EstimateReport taylor_deviation_check(const ExtremalTrajectory& traj, double M,
                                      const Modulus& omega_t) {
  require(traj.times.size() >= 3, Err::BadConfig, "need >= 3 samples");
  EstimateReport rep;
  rep.name = "taylor_deviation";
  const double slack = 10.0 * traj.dt;
  double worst_lhs = 0.0, worst_rhs = 0.0, worst_gap = -1e300;
  bool pass = true;
  for (std::size_t kb = 0; kb < traj.times.size(); ++kb) {
    const double tb = traj.times[kb];
    for (std::size_t kt = 0; kt < kb; ++kt) {
      const double t = traj.times[kt];
      const double gap = tb - t;
      const double ex = traj.x[kb].x - traj.x[kt].x - traj.xdot[kb].x * gap;
      const double ey = traj.x[kb].y - traj.x[kt].y - traj.xdot[kb].y * gap;
      const double lhs = std::hypot(ex, ey);
      const double rhs = 0.5 * M * gap * gap + omega_t(gap) * gap + slack;
      pass = pass && lhs <= rhs;
      if (lhs - rhs > worst_gap) {
        worst_gap = lhs - rhs;
        worst_lhs = lhs;
        worst_rhs = rhs;
      }
    }
  }
  rep.add_row(traj.times.back(), worst_lhs, worst_rhs, pass);
  return rep;
}

EstimateReport adjoint_growth_check(const ExtremalTrajectory& traj, double C) {
  EstimateReport rep;
  rep.name = "adjoint_growth";
  const double t_end = traj.times.back();
  const Point2 p_end = traj.p.back();
  const double p_end_norm = std::hypot(p_end.x, p_end.y);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double lhs = std::hypot(traj.p[k].x, traj.p[k].y);
    const double rhs =
        p_end_norm * std::exp(C * (t_end - traj.times[k])) * (1 + 1e-9) + 10 * traj.dt;
    rep.add_row(traj.times[k], lhs, rhs);
  }
  return rep;
}

EstimateReport speed_bracket_check(const ExtremalTrajectory& traj, double c_lo,
                                   double c_hi) {
  EstimateReport rep;
  rep.name = "speed_bracket";
  const double tol = 10.0 * traj.dt;
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    const double dtk = traj.times[k] - traj.times[k - 1];
    if (dtk <= 1e-14) continue;
    const double speed = std::hypot(traj.x[k].x - traj.x[k - 1].x,
                                    traj.x[k].y - traj.x[k - 1].y) /
                         dtk;
    const bool ok = speed >= c_lo - tol && speed <= c_hi + tol;
    rep.add_row(traj.times[k], speed, c_hi + tol, ok);
  }
  return rep;
}

EstimateReport boundary_tracking_check(const ExtremalTrajectory& ext,
                                       const Trajectory& traj, double dist_tol) {
  EstimateReport rep;
  rep.name = "boundary_tracking";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times[k];
    if (t > ext.times.back() + 1e-12) break;
    // Extremal position at t by linear interpolation.
    std::size_t m = 0;
    while (m + 1 < ext.times.size() && ext.times[m + 1] <= t) ++m;
    Point2 pos = ext.x[m];
    if (m + 1 < ext.times.size() && ext.times[m + 1] > ext.times[m]) {
      const double lam = (t - ext.times[m]) / (ext.times[m + 1] - ext.times[m]);
      pos.x += lam * (ext.x[m + 1].x - ext.x[m].x);
      pos.y += lam * (ext.x[m + 1].y - ext.x[m].y);
    }
    const ScalarField& u = traj.slices[k];
    const double gsup = max_grad_centered(u);
    const double lhs = std::abs(u.interp(pos.x, pos.y));
    rep.add_row(t, lhs, dist_tol * gsup);
  }
  return rep;
}

}  // namespace frontprop
