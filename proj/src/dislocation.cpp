#include "frontprop/dislocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frontprop {

namespace {

// sup_delta |c0(. - delta) - c0|_L1 / |delta| over one-cell shifts: the
// uniform-in-chi Lipschitz bound of c0 * chi.
double translation_modulus(const ScalarField& k) {
  const Grid& g = k.grid;
  double worst = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    double l1 = 0.0;
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        const int si = i - (axis == 0 ? 1 : 0);
        const int sj = j - (axis == 1 ? 1 : 0);
        const double shifted =
            (si >= 0 && sj >= 0) ? k.at(si, sj) : 0.0;
        l1 += std::abs(k.at(i, j) - shifted);
      }
    worst = std::max(worst, l1 * g.cell_volume() / g.h);
  }
  return worst;
}

}  // namespace

EstimateReport validate_h3(DislocationModel& model) {
  const Grid& g = model.c1.grid;
  require(model.r_work > 0, Err::BadConfig, "model needs a working radius");

  double l1 = 0.0, sup = 0.0;
  for (double v : model.kernel.v) {
    l1 += std::abs(v);
    sup = std::max(sup, std::abs(v));
  }
  l1 *= model.kernel.grid.cell_volume();
  model.kernel_l1 = l1;
  model.kernel_sup = sup;

  double c1_min = model.c1.min(), c1_max = model.c1.max();
  const double c_lo = -l1 + c1_min;
  const double c_hi = l1 + c1_max;

  EstimateReport rep;
  rep.name = "h3_validation";
  rep.stats["kernel_l1"] = l1;
  rep.stats["kernel_sup"] = sup;
  rep.stats["c_lo"] = c_lo;
  rep.stats["c_hi"] = c_hi;

  require(c_lo > 0, Err::H3Violation,
          "0 < c_lo <= -|c0|_L1 + c1 fails (lower velocity bound nonpositive)");
  require(sup <= c_hi + 1e-12, Err::H3Violation, "|c0| <= c_hi fails (kernel sup too large)");
  // The remaining chain -|c0|_L1 + c1 <= |c0|_L1 + c1 <= c_hi holds by
  // construction of c_hi; margins are still reported.
  rep.add_row(0.0, 0.0, c_lo, true);            // 0 < c_lo margin
  rep.add_row(0.0, sup, c_hi, true);            // |c0| <= c_hi margin
  rep.add_row(0.0, -l1 + c1_min, l1 + c1_min);  // chain ordering

  model.derived.c_lo = c_lo;
  model.derived.c_hi = c_hi;
  model.derived.lip_x = translation_modulus(model.kernel) + lipschitz_discrete(model.c1);
  // Time modulus: |c(x,t)-c(x,s)| <= |c0|_inf * d/dt vol(K(t)), with the
  // occupancy boundary moving at <= c_hi inside B(0, r_work).
  const double per_proxy =
      g.dim == 2 ? 4.0 * M_PI * model.r_work : 4.0;
  model.derived.omega_t = Modulus{0.0, sup * per_proxy * c_hi};
  rep.stats["lip_x"] = model.derived.lip_x;
  rep.stats["omega_lin"] = model.derived.omega_t.lin_coef;
  return rep;
}

ScalarField dislocation_velocity(const DislocationModel& model,
                                 const ScalarField& chi_slice, double t) {
  ScalarField c = convolve(chi_slice, model.kernel);
  require(c.grid.same_as(model.c1.grid), Err::GridMismatch, "c1 grid differs");
  for (std::size_t k = 0; k < c.v.size(); ++k) c.v[k] += model.c1.v[k];
  c.time = t;
  return c;
}

ScalarField disk_kernel(double radius, double scale, double h, int dim) {
  require(radius > 0, Err::NonpositiveInput, "kernel radius must be positive");
  const int r = static_cast<int>(std::ceil(radius / h)) + 1;
  Grid kg;
  kg.dim = dim;
  kg.h = h;
  kg.n[0] = 2 * r + 1;
  kg.n[1] = dim == 2 ? 2 * r + 1 : 1;
  kg.origin[0] = -r * h;
  kg.origin[1] = dim == 2 ? -r * h : 0.0;
  ScalarField k(kg, 0.0, 0.0);
  for (int j = 0; j < kg.n[1]; ++j)
    for (int i = 0; i < kg.n[0]; ++i)
      if (kg.radius(i, j) <= radius) k.at(i, j) = scale;
  return k;
}

}  // namespace frontprop
