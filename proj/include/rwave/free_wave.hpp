// Exact free-wave propagator for radial 3D data: the half-line d'Alembert
// formula for w = r*u with odd extension through the origin,
//
//   w(r,t) = (w0(r+t) + w0(r-t))/2 + (V0(r+t) - V0(r-t))/2,   V0' = v0.
//
// Initial data are frozen as piecewise-linear interpolants; V0 is the exact
// antiderivative of the v0 interpolant, so evaluation at any t is closed
// form.  This gives an O(dr^2) oracle whose error structure is independent
// of the time stepper, valid for negative t as well.
#pragma once

#include "rwave/grid.hpp"
#include "rwave/state.hpp"
#include "rwave/types.hpp"

namespace rwave {

class FreeEvolver {
 public:
  FreeEvolver(const RadialState& init, const Grid& g);

  // State evolved by t (any sign); the result carries time stamp t0 + t.
  RadialState at(double t) const;

  const Grid& grid() const { return g_; }

 private:
  double w_odd(double s) const;    // odd extension of the w0 interpolant
  double v_odd(double s) const;    // odd extension of the v0 interpolant
  double V_even(double s) const;   // antiderivative of v_odd (even function)
  double dw_even(double s) const;  // interpolated derivative of w0 (even)

  Grid g_;
  Array w0_, v0_, V_, d_;
  double t0_ = 0.0;
};

// One-shot convenience wrapper.
RadialState free_evolve(const RadialState& s, const Grid& g, double t);

// 4*pi*quad of ((w')^2 + v^2)/2: half the squared H1 x L2 norm of (u, u_t).
double linear_energy(const RadialState& s, const Grid& g);

// Squared H1 x L2 distance between two states on the same grid.
double pair_norm_sq(const RadialState& a, const RadialState& b, const Grid& g);

}  // namespace rwave
