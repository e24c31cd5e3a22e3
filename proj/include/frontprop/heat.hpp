#pragma once
#include "frontprop/grid.hpp"

namespace frontprop {

struct HeatState {
  ScalarField v;
  double time = 0.0;
};

// One Crank-Nicolson step of v_t - Lap(v) = source with homogeneous
// Neumann walls; the source is held explicit over the step. The inner
// SPD solve (I - dt/2 Lap) runs matrix-free CG to relative residual
// 1e-10; throws SolverDivergence past the iteration cap.
HeatState heat_step_source(const HeatState& state, const ScalarField& source, double dt);

}  // namespace frontprop
