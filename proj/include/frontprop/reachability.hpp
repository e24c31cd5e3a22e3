#pragma once
#include <functional>

#include "frontprop/eikonal.hpp"
#include "frontprop/grid.hpp"
#include "frontprop/report.hpp"

namespace frontprop {

// Reserved FPF1 sentinel for cells the front never reaches.
constexpr double kNeverReached = 1e30;

struct MinimalTimeField {
  ScalarField v;  // arrival times; kNeverReached where unreached
};

// First time u(., t) >= 0 per cell, linearly interpolated between
// recorded slices. Throws NotMonotone if any cell value decreases by more
// than 1e-12 between slices.
MinimalTimeField minimal_time(const Trajectory& traj);

// |grad v| <= 1/c_lo over neighboring reached cells, tolerance
// 10h/c_lo^2.
EstimateReport lipschitz_check(const MinimalTimeField& mt, double c_lo);

// {v <= t} matches {u(.,t) >= 0} up to one cell at every recorded time.
EstimateReport duality_check(const MinimalTimeField& mt, const Trajectory& traj);

struct Point2 {
  double x = 0.0, y = 0.0;
};

// Velocity with a spatial gradient, as the extremal ODEs need.
class SpatialVelocity {
 public:
  virtual ~SpatialVelocity() = default;
  virtual double c(double x, double y, double t) const = 0;
  virtual Point2 dc(double x, double y, double t) const = 0;
  virtual VelocityBounds bounds() const = 0;
};

class AnalyticSpatialVelocity final : public SpatialVelocity {
 public:
  AnalyticSpatialVelocity(std::function<double(double, double, double)> c,
                          std::function<Point2(double, double, double)> dc,
                          VelocityBounds bounds)
      : c_(std::move(c)), dc_(std::move(dc)), bounds_(bounds) {}
  double c(double x, double y, double t) const override { return c_(x, y, t); }
  Point2 dc(double x, double y, double t) const override { return dc_(x, y, t); }
  VelocityBounds bounds() const override { return bounds_; }

 private:
  std::function<double(double, double, double)> c_;
  std::function<Point2(double, double, double)> dc_;
  VelocityBounds bounds_;
};

// Recorded velocity slices mollified by a grid-scale Gaussian (width 2h);
// gradients by centered differences of the smoothed slices, held
// piecewise-constant in time.
class SmoothedSliceVelocity final : public SpatialVelocity {
 public:
  SmoothedSliceVelocity(const Trajectory& velocity_slices, VelocityBounds bounds);
  double c(double x, double y, double t) const override;
  Point2 dc(double x, double y, double t) const override;
  VelocityBounds bounds() const override { return bounds_; }

 private:
  Trajectory smoothed_;
  VelocityBounds bounds_;
};

struct ExtremalTrajectory {
  std::vector<double> times;  // increasing
  std::vector<Point2> x;
  std::vector<Point2> xdot;
  std::vector<Point2> p;
  double dt = 0.0;  // integrator step
};

// Backward RK4 integration of x' = c p/|p|, p' = -Dc |p| from (x_end,
// p_end) at t_end down to 0. Throws StepFailure if |p| collapses.
ExtremalTrajectory pontryagin_integrate(Point2 x_end, Point2 p_end,
                                        const SpatialVelocity& vel, double t_end,
                                        double dt);

// |x(tb) - x(t) - x'(tb)(tb - t)| <= M/2 (tb-t)^2 + w(tb-t)(tb-t) for all
// recorded pairs, slack 10 dt.
EstimateReport taylor_deviation_check(const ExtremalTrajectory& traj, double M,
                                      const Modulus& omega_t);

// |p(t)| <= |p(t_end)| e^{C (t_end - t)}.
EstimateReport adjoint_growth_check(const ExtremalTrajectory& traj, double C);

// c_lo dt <= |dx| <= c_hi dt per integrator step.
EstimateReport speed_bracket_check(const ExtremalTrajectory& traj, double c_lo,
                                   double c_hi);

// Extremals seeded on the final front stay within dist_tol of the front
// at every recorded slice time (|u| <= dist_tol * |Du|_inf, u
// time-interpolated).
EstimateReport boundary_tracking_check(const ExtremalTrajectory& ext,
                                       const Trajectory& traj, double dist_tol);

}  // namespace frontprop
