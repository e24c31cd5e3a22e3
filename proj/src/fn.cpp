#include "frontprop/fn.hpp"

#include <algorithm>
#include <cmath>

namespace frontprop {

double fn_k_dim(int dim) {
  // Calibrated on uniform-source and half-plane-source runs; the analytic
  // values of the gradient estimates are 2/sqrt(pi) (1D) and sqrt(pi)
  // (2D), frozen here with headroom.
  (void)dim;
  return 2.0;
}

VelocityBounds FnModel::bounds() const {
  VelocityBounds b;
  b.c_lo = c_lo;
  b.c_hi = c_hi;
  const double kN = fn_k_dim(v0.grid.dim);
  const double lip_v = dv0_inf + gamma() * kN * std::sqrt(std::max(0.0, horizon));
  b.lip_x = lip_alpha * lip_v;
  b.omega_t = Modulus{lip_alpha * kN * lip_v, lip_alpha * gamma()};
  return b;
}

void fn_spot_check(const FnModel& model, double r_lo, double r_hi, int samples) {
  require(model.c_lo > 0 && model.c_lo <= model.c_hi, Err::BadConfig,
          "(H5) needs 0 < c_lo <= c_hi");
  require(model.g_lo <= model.g_hi, Err::BadConfig, "(H4) needs g_lo <= g_hi");
  const double span = r_hi - r_lo;
  for (int k = 0; k <= samples; ++k) {
    const double r = r_lo + span * k / samples;
    const double a = model.alpha(r);
    require(a >= model.c_lo - 1e-12 && a <= model.c_hi + 1e-12, Err::AlphaRangeViolation,
            "alpha leaves the declared (H5) range");
    const double gp = model.gplus(r), gm = model.gminus(r);
    require(gm <= gp + 1e-12, Err::BadConfig, "g- <= g+ fails");
    require(gp <= model.g_hi + 1e-12 && gm >= model.g_lo - 1e-12, Err::BadConfig,
            "g bounds leave the declared (H4) range");
    if (k > 0) {
      const double r_prev = r_lo + span * (k - 1) / samples;
      const double da = std::abs(a - model.alpha(r_prev));
      require(da <= model.lip_alpha * (r - r_prev) + 1e-10, Err::BadConfig,
              "alpha exceeds the declared Lipschitz constant");
    }
  }
}

HeatState heat_step(const HeatState& state, const ScalarField& chi_slice,
                    const FnModel& model, double dt) {
  const Grid& g = state.v.grid;
  require(chi_slice.grid.same_as(g), Err::GridMismatch, "chi grid differs");
  ScalarField source(g, 0.0, state.time);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double chi = std::clamp(chi_slice.v[k], 0.0, 1.0);
    const double v = state.v.v[k];
    source.v[k] = model.gplus(v) * chi + model.gminus(v) * (1.0 - chi);
  }
  return heat_step_source(state, source, dt);
}

ScalarField fn_velocity(const HeatState& state, const FnModel& model) {
  ScalarField c(state.v.grid, 0.0, state.time);
  for (std::size_t k = 0; k < c.v.size(); ++k) {
    c.v[k] = model.alpha(state.v.v[k]);
    require(c.v[k] >= model.c_lo - 1e-9 && c.v[k] <= model.c_hi + 1e-9,
            Err::AlphaRangeViolation, "alpha(v) leaves the declared range");
  }
  return c;
}

EstimateReport regularity_report(const std::vector<HeatState>& states, const FnModel& model) {
  require(states.size() >= 2, Err::BadConfig, "regularity report needs >= 2 states");
  EstimateReport rep;
  rep.name = "fn_regularity";
  const double kN = fn_k_dim(states.front().v.grid.dim);
  const double gamma = model.gamma();
  const double v0_inf =
      std::max(std::abs(model.v0.min()), std::abs(model.v0.max()));

  double k_fit = 0.0;
  for (std::size_t m = 0; m < states.size(); ++m) {
    const double t = states[m].time;
    // (i) uniform bound
    const double v_inf =
        std::max(std::abs(states[m].v.min()), std::abs(states[m].v.max()));
    rep.add_row(t, v_inf, v0_inf + gamma * t + 1e-8);
    // (iv) spatial Lipschitz growth
    const double lip = lipschitz_discrete(states[m].v);
    const double rhs_iv = model.dv0_inf + gamma * kN * std::sqrt(t);
    rep.add_row(t, lip, rhs_iv);
    if (t > 1e-12 && gamma > 0)
      k_fit = std::max(k_fit, (lip - model.dv0_inf) / (gamma * std::sqrt(t)));
    // (v) temporal modulus against the previous state
    if (m > 0) {
      const double s = states[m - 1].time;
      const double dv = sup_norm_difference(states[m].v, states[m - 1].v);
      const double rhs_v = kN * (model.dv0_inf + gamma * kN * std::sqrt(s)) *
                               std::sqrt(t - s) +
                           gamma * (t - s);
      rep.add_row(t, dv, rhs_v);
    }
  }
  rep.stats["k_frozen"] = kN;
  rep.stats["k_fitted"] = k_fit;
  return rep;
}

std::function<double(double)> affine_clamped(double a, double b, double lo, double hi) {
  require(lo <= hi, Err::BadConfig, "affine_clamped needs lo <= hi");
  return [=](double r) { return std::clamp(a + b * r, lo, hi); };
}

}  // namespace frontprop
