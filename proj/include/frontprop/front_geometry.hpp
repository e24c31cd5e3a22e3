#pragma once
#include <array>

#include "frontprop/eikonal.hpp"
#include "frontprop/grid.hpp"
#include "frontprop/report.hpp"

namespace frontprop {

using Point = std::array<double, 2>;

// Level-set geometry extracted at a level: closed polylines in 2D
// (inside-on-the-left orientation, so outer loops are CCW), crossing
// points in 1D.
struct FrontSet {
  std::vector<std::vector<Point>> polylines;
  ScalarField enclosed;  // indicator of {u >= level}
  double level = 0.0;
};

// Marching-squares contour of {u = level} with linear edge interpolation.
// Throws EmptyLevelSet / TouchesBoundary.
FrontSet extract_front(const ScalarField& u, double level);

// Total polyline length (2D) or crossing count (1D).
double perimeter(const FrontSet& front);
// Length of the part inside B(0, R), with exact segment-circle clipping.
double perimeter_in_ball(const FrontSet& front, double R);
// Net signed area of the polylines (holes subtract).
double shoelace_area(const FrontSet& front);

// Symmetric vertex-set Hausdorff distance.
double hausdorff_distance(const FrontSet& a, const FrontSet& b);

struct ConeParams {
  double rho = 0.0;
  double theta = 0.0;
};

// theta = min{c_lo^2/(6 C c_hi), c_lo w^-1(c_lo/4), r},  rho = c_lo/(2 c_hi) theta.
// Throws NonpositiveInput.
ConeParams cone_parameters(double c_lo, double c_hi, double C, const Modulus& omega_t,
                           double r_interior);

// Samples the solid cone x + [0,theta] B(nu, rho/theta) on a lattice of
// physical spacing <= h/2 and tests u >= level - slack at every sample.
// Throws BadParams if rho >= theta.
bool cone_fits(const ScalarField& u, double level, Point x, Point nu,
               const ConeParams& params, double slack);

struct ConeSample {
  Point vertex;
  Point axis;
  bool fits = false;
};

struct ConeCertificate {
  std::vector<ConeSample> samples;
  double coverage = 0.0;  // fraction of boundary vertices with a fitting cone
};

// Tries the estimated inward normal first, then axis_count uniformly
// spread directions, at every front vertex.
ConeCertificate cone_certificate(const ScalarField& u, const FrontSet& front,
                                 const ConeParams& params, int axis_count);

// Largest r such that every sampled boundary point admits an interior
// tangent ball of radius r (estimated from the signed-distance profile).
double interior_ball_radius(const ScalarField& u0, const FrontSet& front);

// Perimeter inside B(0,R) vs Lambda_hat * volume inside B(0, R + rho/4).
// Reports the measured perimeter/volume ratio so Lambda_hat stays
// auditable. Throws CertificateMissing unless coverage == 1.
EstimateReport perimeter_bound_check(const FrontSet& front, const ConeParams& params,
                                     double R, double lambda_hat, double coverage);

// Time integral of the band occupancy vs the datum-level bound
//   (b-a)/(eta_bar c_lo) [ L({u0 >= a - c_hi |Du0| tau}) - L({u0 >= b}) ].
// Throws BadBand, BandOutsideEta.
EstimateReport band_estimate_check(const Trajectory& traj, double a, double b,
                                   const GradientBand& band, double c_lo, double c_hi,
                                   double du0_inf, const ScalarField& u0, double tau);

}  // namespace frontprop
