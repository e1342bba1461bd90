// Explicit second-order time integration of the half-line equation
//
//   w_tt = w_rr - |w/r|^(p-1) (w/r) * r,    w(0) = w(r_max) = 0,
//
// by velocity Verlet (kick-drift-kick) with the three-point second
// difference.  Stable for dt = lambda*dr with lambda <= 1; time reversible.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rwave/grid.hpp"
#include "rwave/params.hpp"
#include "rwave/state.hpp"
#include "rwave/types.hpp"

namespace rwave {

enum class BoundaryPolicy { HardZero };

struct StepperConfig {
  double cfl_lambda = 0.5;
  BoundaryPolicy boundary = BoundaryPolicy::HardZero;
  bool nonlinearity = true;
  // Acknowledge runs whose data support can reach the outer boundary before
  // the final time (tail data, long horizons); downgraded to a warning.
  bool allow_boundary_touch = false;
};

// F_j = -|u_j|^(p-1) u_j * r_j with u = w/r; F_0 = 0 (r_0 = 0).
Array nonlinear_force(const RadialState& s, const Grid& g, const ModelParams& mp);

// One velocity-Verlet step of signed size dt.
RadialState step(const RadialState& s, const Grid& g, const StepperConfig& cfg,
                 const ModelParams& mp, double dt);

// Called after every accepted step with (state, t, dt); additionally once at
// the start with dt = 0 so time integrators can seed their first trapezoid.
using Observer = std::function<void(const RadialState&, double, double)>;

struct EvolveResult {
  RadialState state;
  long steps = 0;
  std::vector<std::string> warnings;
};

// Evolve to time T (either sign); the last step is shortened to land on T.
EvolveResult evolve(const RadialState& init, const Grid& g, double T,
                    const StepperConfig& cfg, const ModelParams& mp,
                    const std::vector<Observer>& observers = {});

}  // namespace rwave
