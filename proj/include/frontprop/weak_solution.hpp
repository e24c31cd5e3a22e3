#pragma once
#include <memory>

#include "frontprop/dislocation.hpp"
#include "frontprop/eikonal.hpp"
#include "frontprop/fn.hpp"
#include "frontprop/grid.hpp"

namespace frontprop {

// A nonlocal velocity law: occupancy in, velocity source out. The source
// returned by velocity_for() treats chi as frozen for one whole sweep of
// [0, T] (one Picard iteration).
class ChiCoupledLaw {
 public:
  virtual ~ChiCoupledLaw() = default;
  virtual VelocityBounds bounds() const = 0;
  virtual std::unique_ptr<VelocitySource> velocity_for(const PhaseIndicator& chi) const = 0;
};

class DislocationLaw final : public ChiCoupledLaw {
 public:
  explicit DislocationLaw(DislocationModel model) : model_(std::move(model)) {}
  VelocityBounds bounds() const override { return model_.derived; }
  std::unique_ptr<VelocitySource> velocity_for(const PhaseIndicator& chi) const override;
  const DislocationModel& model() const { return model_; }

 private:
  DislocationModel model_;
};

class FnLaw final : public ChiCoupledLaw {
 public:
  explicit FnLaw(FnModel model) : model_(std::move(model)) {}
  VelocityBounds bounds() const override { return model_.bounds(); }
  std::unique_ptr<VelocitySource> velocity_for(const PhaseIndicator& chi) const override;
  const FnModel& model() const { return model_; }

 private:
  FnModel model_;
};

// Heat march with frozen chi; states recorded at the given times.
std::vector<HeatState> march_heat(const FnModel& model, const PhaseIndicator& chi,
                                  const std::vector<double>& record_times, double dt);

struct WeakSolveConfig {
  InitialDatum datum;
  double horizon = 0.0;
  double tol_chi = 1e-3;  // L1 space-time distance between chi iterates
  int max_iter = 30;
  double cfl_safety = 0.9;
  double damping = 1.0;  // chi <- (1-w) chi + w 1_{u >= 0}; 1 = replacement
  std::vector<double> record_times;
};

struct WeakSolution {
  Trajectory traj;  // u at the requested record times
  Trajectory vel;   // c[chi] at the same times (final iterate)
  PhaseIndicator chi;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;
  bool converged = false;
  // Worst wrong-side chi value beyond one grid cell of the front.
  double sandwich_violation = 0.0;
};

// Fixed-point sweep chi -> solve -> 1_{u >= 0}. Nonconvergence is a
// reported outcome (converged=false), not a throw.
WeakSolution picard_solve(const WeakSolveConfig& config, const ChiCoupledLaw& law,
                          const PhaseIndicator& chi_init);

// Zero level set stays a thin band: L^N({|u| <= 2h}) <= ratio_cap * 4h * Per
// per slice.
EstimateReport classicality_check(const WeakSolution& sol, double ratio_cap = 1.5);

// Across an h-refinement pair, the zero-band measure halves (+-20%).
EstimateReport classicality_refinement_check(const WeakSolution& coarse,
                                             const WeakSolution& fine);

struct UniquenessResult {
  WeakSolution a, b;
  EstimateReport report;
};

// Picard from two seeds; final fronts must agree within Hausdorff 3h and
// final u within 5h |Du0|_inf. Throws NoConvergence if a branch fails.
UniquenessResult uniqueness_experiment(const WeakSolveConfig& config,
                                       const ChiCoupledLaw& law,
                                       const PhaseIndicator& chi_a,
                                       const PhaseIndicator& chi_b);

struct ContractionDiag {
  double tau = 0.0;
  double delta_tau = 0.0;  // sup-norm gap over [0, tau]
  double psi_tau = 0.0;    // datum level-band measure
  double L_hat = 0.0;      // assembled 2 c_hi |Du0| e^{CT} / (eta_bar c_lo)
  bool contracted = false; // L_hat * psi_tau < 1
  bool trivial = false;    // delta_tau == 0
  double tau_star = 0.0;   // largest recorded tau' with L_hat psi_{tau'} < 1
};

struct ContractionInputs {
  double c_lo = 0.0, c_hi = 0.0, lip_x = 0.0;
  double du0_inf = 0.0;
  double eta_bar = 0.0;  // measured band gradient floor
  double horizon = 0.0;
};

ContractionDiag contraction_diagnostics(const WeakSolution& sol_a, const WeakSolution& sol_b,
                                        const InitialDatum& datum, double tau,
                                        const ContractionInputs& in,
                                        EstimateReport* report = nullptr);

}  // namespace frontprop
