#include "frontprop/green.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "frontprop/convolution.hpp"
#include "frontprop/distance.hpp"

namespace frontprop {

double heat_kernel(double r2, double s, int dim) {
  require(s > 0, Err::SingularTime, "heat kernel needs s > 0");
  return std::pow(4.0 * M_PI * s, -0.5 * dim) * std::exp(-r2 / (4.0 * s));
}

PhiEvaluator::PhiEvaluator(const PhaseIndicator& K, int time_nodes)
    : grid_(K.grid), times_(K.times), time_nodes_(time_nodes) {
  require(time_nodes_ >= 8, Err::BadConfig, "need >= 8 time nodes");
  K.validate();
  for (std::size_t m = 0; m < K.frames.size(); ++m) {
    ScalarField ind(grid_, 0.0, K.times[m]);
    std::size_t inside = 0;
    for (std::size_t k = 0; k < ind.v.size(); ++k) {
      ind.v[k] = K.frames[m][k] >= 0.5 ? 1.0 : 0.0;
      inside += ind.v[k] > 0.5;
    }
    if (inside == 0 || inside == ind.v.size()) {
      // Degenerate frames dilate to themselves; encode as +-inf depth.
      ScalarField flat(grid_, inside == 0 ? 1e30 : -1e30, K.times[m]);
      sdf_.push_back(std::move(flat));
    } else {
      sdf_.push_back(signed_distance(ind));
    }
  }
}

const ScalarField& PhiEvaluator::dilated(std::size_t frame, double r) {
  auto key = std::make_pair(frame, r);
  auto it = dilated_cache_.find(key);
  if (it != dilated_cache_.end()) return it->second;
  // Cell coverage of {d <= r} with a linear sub-cell ramp (|Dd| = 1), so
  // the dilated mass varies smoothly in r instead of by whole-cell jumps.
  ScalarField ind(grid_, 0.0, times_[frame]);
  const ScalarField& d = sdf_[frame];
  const double h = grid_.h;
  for (std::size_t k = 0; k < ind.v.size(); ++k)
    ind.v[k] = std::clamp((r - d.v[k]) / h + 0.5, 0.0, 1.0);
  return dilated_cache_.emplace(key, std::move(ind)).first->second;
}

const ScalarField& PhiEvaluator::phi_field(double t, double r) {
  FieldKey key{t, r};
  auto it = field_cache_.find(key);
  if (it != field_cache_.end()) return it->second;
  require(t > 0, Err::SingularTime, "phi field needs t > 0");

  // int_0^t f(s) ds with s = t - w^2: int_0^sqrt(t) 2 w f(t - w^2) dw,
  // composite trapezoid in w. The integrand of the w-integral vanishes at
  // w = 0, taming the kernel singularity at s = t.
  ScalarField acc(grid_, 0.0, t);
  const double w_max = std::sqrt(t);
  const int n = time_nodes_;
  for (int q = 1; q <= n; ++q) {
    const double w = w_max * q / n;
    const double s = std::max(0.0, t - w * w);
    const double weight = (q == n ? 0.5 : 1.0) * (w_max / n) * 2.0 * w;
    std::size_t frame = 0;
    while (frame + 1 < times_.size() && times_[frame + 1] <= s + 1e-14) ++frame;
    const ScalarField kernel = gaussian_kernel(w * w, grid_.h, grid_.dim);
    ScalarField conv = convolve(dilated(frame, r), kernel);
    for (std::size_t k = 0; k < acc.v.size(); ++k) acc.v[k] += weight * conv.v[k];
  }
  return field_cache_.emplace(key, std::move(acc)).first->second;
}

double PhiEvaluator::phi(double x, double y, double t, double r) {
  require(r >= 0, Err::BadConfig, "phi needs r >= 0");
  if (t <= 0) return 0.0;  // SingularTime degenerate case, by convention
  return phi_field(t, r).interp(x, y);
}

EstimateReport lipschitz_in_r_check(PhiEvaluator& phi, double coverage,
                                    const std::vector<std::array<double, 2>>& x_samples,
                                    const std::vector<double>& t_samples,
                                    const std::vector<double>& r_samples, double lambda0) {
  require(coverage >= 1.0, Err::CertificateMissing,
          "green estimate needs a full cone certificate");
  for (double t : t_samples)
    require(t >= 0 && t < 1.0, Err::BadConfig, "t samples must lie in [0, 1)");

  EstimateReport rep;
  rep.name = "green_lipschitz_r";
  double quotient_sup = 0.0;
  double quotient_inf = std::numeric_limits<double>::infinity();
  for (double t : t_samples) {
    for (const auto& xs : x_samples) {
      const double base = phi.phi(xs[0], xs[1], t, 0.0);
      for (double r : r_samples) {
        if (r <= 0) {
          rep.add_row(t, 0.0, 1e-12, true);  // r = 0: difference vanishes
          continue;
        }
        const double diff = std::abs(phi.phi(xs[0], xs[1], t, r) - base);
        const double qtol = 2.0 * phi.phi_field(t, r).grid.h * lambda0 + 1e-8;
        rep.add_row(t, diff, lambda0 * r + qtol);
        quotient_sup = std::max(quotient_sup, diff / r);
        quotient_inf = std::min(quotient_inf, diff / r);
      }
    }
  }
  rep.stats["lambda0_hat"] = quotient_sup;
  rep.stats["quotient_min"] = quotient_inf;
  return rep;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double i_n_constant(int dim) {
  require(dim == 1 || dim == 2, Err::BadConfig, "I(N) implemented for N in {1,2}");
  // Substitution u = w^2 removes the 1/sqrt(u) factor:
  //   I(N) = 2 int_0^1 ((4(N-1)|log w|)^{1/2} + 1)^N + 1 dw,
  // leaving only the integrable log growth at w = 0.
  auto integrand = [dim](double w) {
    const double lg = w > 0 ? std::sqrt(4.0 * (dim - 1) * std::abs(std::log(w))) : 0.0;
    return 2.0 * (std::pow(lg + 1.0, dim) + 1.0);
  };
  if (dim == 1) return 4.0;  // integrand is the constant 4
  const double eps = 1e-12;  // tail: integrand ~ 8|log w|, mass < 1e-10
  const double a = eps, b = 1.0;
  const double fa = integrand(a), fb = integrand(b), fm = integrand(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptive_simpson(integrand, a, b, fa, fm, fb, whole, 1e-10, 48);
}

}  // namespace frontprop
