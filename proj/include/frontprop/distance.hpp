#pragma once
#include "frontprop/grid.hpp"

namespace frontprop {

// Signed distance to the set K = {indicator >= 0.5}: positive outside,
// negative inside. Exact Euclidean transform (per-axis lower envelope of
// parabolas), with a half-cell shift per branch so the zero level sits on
// the cell interface and |Dd| stays 1 + O(h) across it.
// Throws EmptyShape / FullShape.
ScalarField signed_distance(const ScalarField& indicator);

// Pointwise surrogate of the viscosity inequality -|u0| - |Du0| + eta0 <= 0.
// Smooth cells use centered differences; cells where the one-sided
// differences disagree (truncation floor, cut locus) are classified as
// kinks and use the larger one-sided magnitude per axis.
struct H2Certificate {
  double eta0 = 0.0;       // largest value passing the discrete check
  int kink_cells = 0;      // cells scanned with the one-sided rule
  double worst_slack = 0;  // min over cells of |u0| + |Du0| - eta0
};

H2Certificate h2_certificate(const ScalarField& u0);

// Verification scan at a given eta0: largest violation of
// eta0 - |u0| - |Du0| over all cells (<= tol means the certificate holds).
double h2_violation(const ScalarField& u0, double eta0);

struct InitialDatum {
  ScalarField field;
  double R0 = 0.0;    // field == floor outside B(0, R0)
  double eta0 = 0.0;  // discrete (H2) constant
  double floor_value = -1.0;
  H2Certificate cert;
  double du0_inf = 0.0;       // sup |Du0|, centered stencil
  double front_radius = 0.0;  // sup |x| over {field >= 0}
};

// Truncated signed-distance profile of a shape: positive inside, equal to
// `floor_value` away from the shape, with the discrete (H2) certificate
// attached. Throws EmptyShape, FullShape, NoEta.
InitialDatum build_truncated_sdf(const ScalarField& shape, double floor_value);

// Same validation and certificate for an already-sampled profile (e.g. an
// exact analytic signed-distance datum).
InitialDatum datum_from_profile(const ScalarField& profile, double floor_value);

}  // namespace frontprop
