#pragma once
#include <functional>
#include <memory>

#include "frontprop/distance.hpp"
#include "frontprop/grid.hpp"
#include "frontprop/report.hpp"

namespace frontprop {

// Time modulus of continuity w(s) = sqrt_coef*sqrt(s) + lin_coef*s.
// Exactly invertible; a zero modulus has inverse() == +inf.
struct Modulus {
  double sqrt_coef = 0.0;
  double lin_coef = 0.0;

  double operator()(double s) const;
  double inverse(double y) const;  // largest s with w(s) <= y
};

// Velocity constants guaranteed uniformly in the occupancy argument.
struct VelocityBounds {
  double c_lo = 0.0;   // 0 < c_lo <= c <= c_hi
  double c_hi = 0.0;
  double lip_x = 0.0;  // spatial Lipschitz constant C
  Modulus omega_t;     // (time modulus, used by the cone parameters)
};

// Streaming provider of the velocity field on a fixed grid. solve() calls
// at() with nondecreasing times; stateful providers (heat coupling) may
// advance internal state.
class VelocitySource {
 public:
  virtual ~VelocitySource() = default;
  virtual void reset() {}
  virtual ScalarField at(double t) = 0;
  virtual VelocityBounds bounds() const = 0;
};

// c(x, t) given by a callback; bounds declared by the caller.
class AnalyticVelocity final : public VelocitySource {
 public:
  AnalyticVelocity(Grid grid, std::function<double(double, double, double)> c,
                   VelocityBounds bounds)
      : grid_(std::move(grid)), c_(std::move(c)), bounds_(bounds) {}
  ScalarField at(double t) override;
  VelocityBounds bounds() const override { return bounds_; }

 private:
  Grid grid_;
  std::function<double(double, double, double)> c_;
  VelocityBounds bounds_;
};

struct EikonalProblem {
  InitialDatum u0;
  VelocitySource* velocity = nullptr;
  double horizon = 0.0;
  double cfl_safety = 0.9;
};

// Recorded solution slices, strictly increasing times from 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<ScalarField> slices;

  std::size_t size() const { return times.size(); }
  const ScalarField& slice(std::size_t k) const { return slices[k]; }
  // Index of the last recorded time <= t.
  std::size_t index_at(double t) const;
};

struct SolveOutput {
  Trajectory traj;
  Trajectory vel;  // velocity slices at the same record times
};

// Stability bound of the explicit monotone scheme.
double cfl_dt(const Grid& grid, double c_bar, double safety);

// One explicit Euler step of u_t = c |Du| with the monotone upwind
// gradient: per axis only neighbor values above u(x) contribute, so the
// update is nondecreasing in every stencil value (discrete comparison
// principle) and u' >= u pointwise for c >= 0.
// Throws CflViolation, NegativeVelocity.
ScalarField step(const ScalarField& u, const ScalarField& c, double dt);

// March to the horizon, recording (time-interpolated) slices at
// record_times. Fails a priori (DomainTooSmall) if Lemma-type finite
// speed lets the front reach within 2 cells of the boundary.
SolveOutput solve(const EikonalProblem& problem, const std::vector<double>& record_times);

// |Du(x,t)| <= e^{C T} |Du0|_inf, pass iff lhs <= rhs (1 + 5h).
EstimateReport check_lipschitz_bound(const Trajectory& traj, double C, double du0_inf);

// Lower gradient bound near the front.
struct GradientBand {
  double eta = 0.0;       // band half-width parameter (band = {|u| < eta/2})
  double eta_bar = 0.0;   // measured min |Du| over the band, all slices
  double gamma_hat = 0.0; // fitted decay exponent
};

// Largest eta whose band keeps min |Du| >= sqrt(2 eta) e^{-gamma_hat t/2}
// at every slice (gamma_hat fitted as the smallest feasible exponent).
// Throws NoBand when no positive eta passes.
GradientBand gradient_band(const Trajectory& traj);

// sup-norm difference of two runs vs the velocity-difference integral.
EstimateReport difference_bound_check(const Trajectory& traj1, const Trajectory& traj2,
                                      const Trajectory& vel1, const Trajectory& vel2,
                                      double C, double du0_inf);

// {u(.,t) >= 0} inside B(0, R0 + c_bar t + 2h) at every slice.
EstimateReport finite_speed_check(const Trajectory& traj, double R0, double c_bar);

// sup over B(x, 2 delta/eta0) of u >= u(x) + delta - 2h|Du|_inf for every
// cell with |u(x)| <= delta. Throws BadDelta if delta >= eta0/2.
EstimateReport increase_principle_check(const ScalarField& u, double eta0, double delta);

}  // namespace frontprop
