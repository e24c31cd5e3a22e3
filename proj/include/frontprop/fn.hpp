#pragma once
#include <functional>

#include "frontprop/eikonal.hpp"
#include "frontprop/grid.hpp"
#include "frontprop/heat.hpp"
#include "frontprop/report.hpp"

namespace frontprop {

// Heat-coupled velocity law: v solves v_t - Lap v = g+(v) chi + g-(v)(1-chi)
// and the front moves with c = alpha(v). Scalar functions come in as
// callbacks with declared constants; declared bounds are spot-verified on
// a sampled range at validation time.
struct FnModel {
  std::function<double(double)> alpha;
  std::function<double(double)> gplus;
  std::function<double(double)> gminus;
  double c_lo = 0.0, c_hi = 0.0, lip_alpha = 0.0;  // (H5)
  double g_lo = 0.0, g_hi = 0.0, lip_g = 0.0;      // (H4), M
  ScalarField v0;
  double dv0_inf = 0.0;
  double horizon = 0.0;  // T used for the uniform constants

  double gamma() const { return std::max(std::abs(g_lo), std::abs(g_hi)); }
  // Uniform-in-chi constants of c = alpha(v) (spatial Lipschitz constant
  // and the sqrt-type time modulus inherited from the heat flow).
  VelocityBounds bounds() const;
};

// Calibrated dimensional constant of the heat-kernel gradient estimates;
// frozen after fitting, reports also print the minimal fitted value.
double fn_k_dim(int dim);

// Samples alpha, g+, g- on [r_lo, r_hi] and verifies the declared bounds
// and orderings. Throws AlphaRangeViolation / BadConfig.
void fn_spot_check(const FnModel& model, double r_lo, double r_hi, int samples = 10000);

// One source step g+(v) chi + g-(v)(1 - chi), explicit, then CN diffusion.
HeatState heat_step(const HeatState& state, const ScalarField& chi_slice,
                    const FnModel& model, double dt);

// c = alpha(v), verified against the declared (H5) range.
ScalarField fn_velocity(const HeatState& state, const FnModel& model);

// Heat-flow regularity: uniform bound, spatial Lipschitz growth and
// temporal modulus, all with the single frozen k_N.
EstimateReport regularity_report(const std::vector<HeatState>& states, const FnModel& model);

// Built-in scalar function: clamp(a + b r, lo, hi).
std::function<double(double)> affine_clamped(double a, double b, double lo, double hi);

}  // namespace frontprop
