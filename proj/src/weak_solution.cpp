#include "frontprop/weak_solution.hpp"

#include <algorithm>
#include <cmath>

#include "frontprop/front_geometry.hpp"

namespace frontprop {

namespace {

class DislocationChiVelocity final : public VelocitySource {
 public:
  DislocationChiVelocity(const DislocationModel& model, const PhaseIndicator& chi)
      : model_(model), chi_(chi) {}

  void reset() override { cached_frame_ = SIZE_MAX; }

  ScalarField at(double t) override {
    const std::size_t frame = chi_.frame_at(t);
    if (frame != cached_frame_) {
      ScalarField chi_field(chi_.grid, 0.0, t);
      const auto& f = chi_.frames[frame];
      for (std::size_t k = 0; k < f.size(); ++k) chi_field.v[k] = f[k];
      cache_ = dislocation_velocity(model_, chi_field, t);
      cached_frame_ = frame;
    }
    cache_.time = t;
    return cache_;
  }

  VelocityBounds bounds() const override { return model_.derived; }

 private:
  const DislocationModel& model_;
  PhaseIndicator chi_;
  ScalarField cache_;
  std::size_t cached_frame_ = SIZE_MAX;
};

class FnChiVelocity final : public VelocitySource {
 public:
  FnChiVelocity(const FnModel& model, const PhaseIndicator& chi)
      : model_(model), chi_(chi) {}

  void reset() override {
    state_.v = model_.v0;
    state_.time = 0.0;
  }

  ScalarField at(double t) override {
    require(t >= state_.time - 1e-12, Err::BadConfig,
            "heat-coupled velocity queried backwards in time");
    if (t > state_.time + 1e-14) {
      const std::size_t frame = chi_.frame_at(state_.time);
      ScalarField chi_field(chi_.grid, 0.0, state_.time);
      const auto& f = chi_.frames[frame];
      for (std::size_t k = 0; k < f.size(); ++k) chi_field.v[k] = f[k];
      state_ = heat_step(state_, chi_field, model_, t - state_.time);
    }
    return fn_velocity(state_, model_);
  }

  VelocityBounds bounds() const override { return model_.bounds(); }

 private:
  const FnModel& model_;
  PhaseIndicator chi_;
  HeatState state_;
};

}  // namespace

std::unique_ptr<VelocitySource> DislocationLaw::velocity_for(const PhaseIndicator& chi) const {
  return std::make_unique<DislocationChiVelocity>(model_, chi);
}

std::unique_ptr<VelocitySource> FnLaw::velocity_for(const PhaseIndicator& chi) const {
  return std::make_unique<FnChiVelocity>(model_, chi);
}

std::vector<HeatState> march_heat(const FnModel& model, const PhaseIndicator& chi,
                                  const std::vector<double>& record_times, double dt) {
  std::vector<HeatState> out;
  HeatState state{model.v0, 0.0};
  state.v.time = 0.0;
  std::size_t next = 0;
  if (next < record_times.size() && record_times[next] <= 1e-14) {
    out.push_back(state);
    ++next;
  }
  const double T = record_times.empty() ? 0.0 : record_times.back();
  while (state.time < T - 1e-12) {
    const double step_dt = std::min(dt, T - state.time);
    const std::size_t frame = chi.frame_at(state.time);
    ScalarField chi_field(chi.grid, 0.0, state.time);
    const auto& f = chi.frames[frame];
    for (std::size_t k = 0; k < f.size(); ++k) chi_field.v[k] = f[k];
    state = heat_step(state, chi_field, model, step_dt);
    while (next < record_times.size() && record_times[next] <= state.time + 1e-12) {
      out.push_back(state);
      out.back().time = record_times[next];
      out.back().v.time = record_times[next];
      ++next;
    }
  }
  return out;
}

namespace {

// L1 space-time distance between an indicator history sampled at `times`
// and a new frame set on the same time lattice.
double chi_residual(const std::vector<double>& times,
                    const std::vector<std::vector<float>>& a,
                    const std::vector<std::vector<float>>& b, double cell_volume) {
  double total = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    double w;
    if (times.size() == 1) w = 1.0;
    else if (m == 0) w = 0.5 * (times[1] - times[0]);
    else if (m + 1 == times.size()) w = 0.5 * (times[m] - times[m - 1]);
    else w = 0.5 * (times[m + 1] - times[m - 1]);
    double l1 = 0.0;
    for (std::size_t k = 0; k < a[m].size(); ++k)
      l1 += std::abs(static_cast<double>(a[m][k]) - static_cast<double>(b[m][k]));
    total += w * l1 * cell_volume;
  }
  return total;
}

}  // namespace

WeakSolution picard_solve(const WeakSolveConfig& config, const ChiCoupledLaw& law,
                          const PhaseIndicator& chi_init) {
  require(config.tol_chi > 0, Err::BadConfig, "tol_chi must be positive");
  require(config.max_iter >= 1, Err::BadConfig, "max_iter must be >= 1");
  require(!chi_init.times.empty() && chi_init.times.front() <= 1e-12 &&
              chi_init.times.back() >= config.horizon - 1e-12,
          Err::BadConfig, "chi_init frames must cover [0, T]");

  const Grid& g = config.datum.field.grid;
  const VelocityBounds vb = law.bounds();
  const double T = config.horizon;
  require(config.datum.front_radius + vb.c_hi * T + 4 * g.h <= g.inscribed_radius(),
          Err::DomainTooSmall, "front may reach the grid boundary before T");

  // Fixed step-time lattice shared by every iterate.
  const double dt0 = cfl_dt(g, vb.c_hi, config.cfl_safety);
  std::vector<double> step_times{0.0};
  for (double t = 0.0; t < T - 1e-12;) {
    const double dt = std::min(dt0, T - t);
    t += dt;
    step_times.push_back(t);
  }

  PhaseIndicator chi = chi_init;
  chi.grid = g;

  WeakSolution sol;
  const double w = config.damping;
  for (int iter = 0; iter < config.max_iter; ++iter) {
    auto vel = law.velocity_for(chi);
    vel->reset();

    PhaseIndicator chi_next;
    chi_next.grid = g;
    chi_next.times = step_times;
    chi_next.frames.resize(step_times.size());

    Trajectory traj, vrec;
    std::size_t next_rec = 0;

    ScalarField u = config.datum.field;
    u.time = 0.0;
    auto held_chi = [&](std::size_t m) {
      // chi value at step m of the previous iterate (held between frames).
      const std::size_t frame = chi.frame_at(step_times[m]);
      return chi.frames[frame];
    };
    auto update_frame = [&](std::size_t m, const ScalarField& usl) {
      std::vector<float> f(g.size());
      if (w >= 1.0) {
        for (std::size_t k = 0; k < f.size(); ++k) f[k] = usl.v[k] >= 0 ? 1.0f : 0.0f;
      } else {
        const std::vector<float> prev = held_chi(m);
        for (std::size_t k = 0; k < f.size(); ++k) {
          const float target = usl.v[k] >= 0 ? 1.0f : 0.0f;
          f[k] = static_cast<float>((1.0 - w) * prev[k] + w * target);
        }
      }
      chi_next.frames[m] = std::move(f);
    };
    update_frame(0, u);

    ScalarField c = vel->at(0.0);
    if (!config.record_times.empty() && config.record_times[0] <= 1e-14) {
      traj.times.push_back(0.0);
      traj.slices.push_back(u);
      vrec.times.push_back(0.0);
      vrec.slices.push_back(c);
      next_rec = 1;
    }
    for (std::size_t m = 1; m < step_times.size(); ++m) {
      const double t_prev = step_times[m - 1];
      const double dt = step_times[m] - t_prev;
      if (m > 1) c = vel->at(t_prev);
      ScalarField u_next = step(u, c, dt);
      while (next_rec < config.record_times.size() &&
             config.record_times[next_rec] <= step_times[m] + 1e-12) {
        const double rt = std::min(config.record_times[next_rec], step_times[m]);
        const double lam = (rt - t_prev) / dt;
        ScalarField rec(g, 0.0, rt);
        for (std::size_t k = 0; k < rec.v.size(); ++k)
          rec.v[k] = (1 - lam) * u.v[k] + lam * u_next.v[k];
        traj.times.push_back(rt);
        traj.slices.push_back(std::move(rec));
        vrec.times.push_back(rt);
        vrec.slices.push_back(c);
        ++next_rec;
      }
      u = std::move(u_next);
      update_frame(m, u);
      for (int j = 0; j < g.n[1]; ++j)
        for (int i = 0; i < g.n[0]; ++i) {
          const bool ring = i < 2 || i >= g.n[0] - 2 || (g.dim == 2 && (j < 2 || j >= g.n[1] - 2));
          if (ring && u.at(i, j) >= 0)
            fail(Err::DomainTooSmall, "front reached the boundary ring");
        }
    }

    // Residual against the previous iterate sampled on the step lattice.
    std::vector<std::vector<float>> prev_sampled(step_times.size());
    for (std::size_t m = 0; m < step_times.size(); ++m) prev_sampled[m] = held_chi(m);
    const double res =
        chi_residual(step_times, prev_sampled, chi_next.frames, g.cell_volume());

    chi = std::move(chi_next);
    sol.residual_history.push_back(res);
    sol.iterations = iter + 1;
    sol.residual = res;
    sol.traj = std::move(traj);
    sol.vel = std::move(vrec);
    if (res < config.tol_chi) {
      sol.converged = true;
      break;
    }
  }
  sol.chi = std::move(chi);

  // Sandwich scan on the final iterate: chi must be 1 well inside and 0
  // well outside, "well" meaning one grid cell of front slack.
  double violation = 0.0;
  for (std::size_t k = 0; k < sol.traj.size(); ++k) {
    const ScalarField& usl = sol.traj.slices[k];
    const double slack = usl.grid.h * max_grad_centered(usl);
    const auto& frame = sol.chi.frames[sol.chi.frame_at(sol.traj.times[k])];
    for (std::size_t c = 0; c < frame.size(); ++c) {
      if (usl.v[c] > slack) violation = std::max(violation, 1.0 - frame[c]);
      if (usl.v[c] < -slack) violation = std::max(violation, static_cast<double>(frame[c]));
    }
  }
  sol.sandwich_violation = violation;
  return sol;
}

EstimateReport classicality_check(const WeakSolution& sol, double ratio_cap) {
  EstimateReport rep;
  rep.name = "classicality";
  for (std::size_t k = 0; k < sol.traj.size(); ++k) {
    const ScalarField& u = sol.traj.slices[k];
    const double h = u.grid.h;
    const double band = band_measure(u, -2 * h, 2 * h);
    const FrontSet front = extract_front(u, 0.0);
    const double per = perimeter(front);
    rep.add_row(sol.traj.times[k], band, ratio_cap * 4 * h * per);
  }
  return rep;
}

EstimateReport classicality_refinement_check(const WeakSolution& coarse,
                                             const WeakSolution& fine) {
  EstimateReport rep;
  rep.name = "classicality_refinement";
  require(coarse.traj.size() == fine.traj.size(), Err::GridMismatch,
          "refinement pair must share record times");
  for (std::size_t k = 0; k < coarse.traj.size(); ++k) {
    const double hc = coarse.traj.slices[k].grid.h;
    const double hf = fine.traj.slices[k].grid.h;
    const double bc = band_measure(coarse.traj.slices[k], -2 * hc, 2 * hc);
    const double bf = band_measure(fine.traj.slices[k], -2 * hf, 2 * hf);
    const double ratio = bf / std::max(bc, 1e-300);
    const bool ok = ratio >= 0.4 && ratio <= 0.6;
    rep.add_row(coarse.traj.times[k], ratio, 0.6, ok);
  }
  return rep;
}

UniquenessResult uniqueness_experiment(const WeakSolveConfig& config,
                                       const ChiCoupledLaw& law,
                                       const PhaseIndicator& chi_a,
                                       const PhaseIndicator& chi_b) {
  UniquenessResult out;
  out.a = picard_solve(config, law, chi_a);
  out.b = picard_solve(config, law, chi_b);
  require(out.a.converged, Err::NoConvergence, "first seed did not converge");
  require(out.b.converged, Err::NoConvergence, "second seed did not converge");

  const double h = config.datum.field.grid.h;
  out.report.name = "uniqueness";
  const ScalarField& ua = out.a.traj.slices.back();
  const ScalarField& ub = out.b.traj.slices.back();
  const FrontSet fa = extract_front(ua, 0.0);
  const FrontSet fb = extract_front(ub, 0.0);
  const double dist = hausdorff_distance(fa, fb);
  out.report.add_row(out.a.traj.times.back(), dist, 3 * h);
  const double sup = sup_norm_difference(ua, ub);
  out.report.add_row(out.a.traj.times.back(), sup, 5 * h * config.datum.du0_inf);
  return out;
}

ContractionDiag contraction_diagnostics(const WeakSolution& sol_a, const WeakSolution& sol_b,
                                        const InitialDatum& datum, double tau,
                                        const ContractionInputs& in,
                                        EstimateReport* report) {
  require(sol_a.traj.size() == sol_b.traj.size(), Err::GridMismatch,
          "solutions recorded on different time grids");
  require(in.eta_bar > 0 && in.c_lo > 0, Err::BadConfig, "need eta_bar, c_lo > 0");

  ContractionDiag diag;
  diag.tau = tau;
  diag.L_hat =
      2.0 * in.c_hi * in.du0_inf * std::exp(in.lip_x * in.horizon) / (in.eta_bar * in.c_lo);

  auto delta_up_to = [&](double t_cap) {
    double d = 0.0;
    for (std::size_t k = 0; k < sol_a.traj.size(); ++k) {
      if (sol_a.traj.times[k] > t_cap + 1e-12) break;
      d = std::max(d, sup_norm_difference(sol_a.traj.slices[k], sol_b.traj.slices[k]));
    }
    return d;
  };
  auto psi_at = [&](double t_cap, double delta) {
    const double threshold = -delta - in.c_hi * in.du0_inf * t_cap;
    return superlevel_measure(datum.field, threshold) - superlevel_measure(datum.field, 0.0);
  };

  diag.delta_tau = delta_up_to(tau);
  diag.trivial = diag.delta_tau <= 0.0;
  diag.psi_tau = psi_at(tau, diag.delta_tau);
  diag.contracted = diag.L_hat * diag.psi_tau < 1.0;

  diag.tau_star = 0.0;
  for (double t : sol_a.traj.times) {
    if (t <= 0) continue;
    const double d = delta_up_to(t);
    if (diag.L_hat * psi_at(t, d) < 1.0) diag.tau_star = t;
  }

  if (report) {
    report->name = "contraction";
    report->add_row(tau, diag.L_hat * diag.psi_tau, 1.0, diag.contracted);
    // Step-4 inequality delta <= L psi delta (+ grid slack).
    const double h = datum.field.grid.h;
    report->add_row(tau, diag.delta_tau,
                    diag.L_hat * diag.psi_tau * diag.delta_tau + 10 * h);
    report->stats["delta_tau"] = diag.delta_tau;
    report->stats["psi_tau"] = diag.psi_tau;
    report->stats["L_hat"] = diag.L_hat;
    report->stats["tau_star"] = diag.tau_star;
    report->stats["trivial"] = diag.trivial ? 1.0 : 0.0;
  }
  return diag;
}

}  // namespace frontprop
