#pragma once
#include <array>
#include <map>

#include "frontprop/grid.hpp"
#include "frontprop/report.hpp"

namespace frontprop {

// Heat kernel G(y, s) = (4 pi s)^{-N/2} exp(-|y|^2 / 4s).
double heat_kernel(double r2, double s, int dim);

// Potential of the r-dilated occupancy tube under the heat kernel:
//   phi(x, t, r) = int_0^t int G(x-y, t-s) 1_{K(s)+rB}(y) dy ds.
// Space integrals by spectral convolution with the mass-normalized
// sampled kernel; the time quadrature substitutes t-s = w^2 so nodes
// cluster at the 1/sqrt(t-s) singularity. Caches the per-frame signed
// distances and dilated-indicator spectra across calls.
class PhiEvaluator {
 public:
  explicit PhiEvaluator(const PhaseIndicator& K, int time_nodes = 48);

  // t = 0 returns 0 by convention (SingularTime degenerate case).
  double phi(double x, double y, double t, double r);

  // Whole-grid field of phi(., t, r); phi() reads from it bilinearly.
  const ScalarField& phi_field(double t, double r);

 private:
  struct FieldKey {
    double t, r;
    bool operator<(const FieldKey& o) const {
      return t != o.t ? t < o.t : r < o.r;
    }
  };
  const ScalarField& dilated(std::size_t frame, double r);

  Grid grid_;
  std::vector<double> times_;
  std::vector<ScalarField> sdf_;  // per-frame signed distance
  std::map<std::pair<std::size_t, double>, ScalarField> dilated_cache_;
  std::map<FieldKey, ScalarField> field_cache_;
  int time_nodes_;
};

// |phi(x,t,r) - phi(x,t,0)| <= Lambda0 r on the sample batch; also
// reports the measured sup difference quotient. Requires a full cone
// certificate (coverage 1), else CertificateMissing.
EstimateReport lipschitz_in_r_check(PhiEvaluator& phi, double coverage,
                                    const std::vector<std::array<double, 2>>& x_samples,
                                    const std::vector<double>& t_samples,
                                    const std::vector<double>& r_samples, double lambda0);

// I(N) = int_0^1 ((|2(N-1) log u|^{1/2} + 1)^N + 1) / sqrt(u) du by
// adaptive quadrature to 1e-8 relative (exactly 4 for N = 1).
double i_n_constant(int dim);

}  // namespace frontprop
