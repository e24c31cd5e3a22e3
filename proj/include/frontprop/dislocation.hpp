#pragma once
#include "frontprop/convolution.hpp"
#include "frontprop/eikonal.hpp"
#include "frontprop/grid.hpp"
#include "frontprop/report.hpp"

namespace frontprop {

// Convolution velocity law c[chi] = c0 * chi + c1. The kernel and the
// additive part are time-independent here; the operations still take t so
// time-sampled kernels can slot in later.
struct DislocationModel {
  ScalarField kernel;  // c0, compactly supported patch (odd extents)
  ScalarField c1;      // on the working grid
  double r_work = 0.0; // containment radius of admissible occupancies

  // Derived by validate_h3():
  double kernel_l1 = 0.0;
  double kernel_sup = 0.0;
  VelocityBounds derived;
};

// Checks the (H3) inequalities with positive margin and fills the induced
// uniform constants:
//   c_lo = min_x(-|c0|_L1 + c1),   c_hi = max_x(|c0|_L1 + c1),
//   lip_x = (L1 translation modulus of c0) + Lip(c1),
// the translation modulus being the uniform-in-chi spatial Lipschitz
// bound of c0 * chi (finite even for discontinuous kernels).
// Throws H3Violation naming the failing inequality.
EstimateReport validate_h3(DislocationModel& model);

// c = c0 * chi(., t) + c1, zero extension outside the grid.
ScalarField dislocation_velocity(const DislocationModel& model,
                                 const ScalarField& chi_slice, double t);

// Built-in kernel: scale * 1_{B(0, radius)} sampled at spacing h.
ScalarField disk_kernel(double radius, double scale, double h, int dim = 2);

}  // namespace frontprop
