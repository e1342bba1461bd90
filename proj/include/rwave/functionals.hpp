// Instantaneous functionals of a state: the conserved energy and its split,
// the kappa-weighted escaping energy I(t), exterior energy, the pointwise
// radial decay ratio, the conformal charge, and radial fractional Sobolev
// seminorms via the discrete sine transform.
#pragma once

#include "rwave/grid.hpp"
#include "rwave/params.hpp"
#include "rwave/state.hpp"
#include "rwave/types.hpp"

namespace rwave {

struct EnergySplit {
  double gradient = 0.0;   // (1/2) int |grad u|^2 dx, via the w-form identity
  double kinetic = 0.0;    // (1/2) int u_t^2 dx
  double potential = 0.0;  // (1/(p+1)) int |u|^(p+1) dx
  double total = 0.0;
};

EnergySplit energy(const RadialState& s, const Grid& g, const ModelParams& mp);

// Nodal values of e(u) * r^2 where e(u) = |grad u|^2/2 + u_t^2/2 +
// |u|^(p+1)/(p+1); u_r is formed locally as (w'r - w)/r^2.  This is the
// density integrated by the exterior/weighted functionals and the ledger.
Array energy_density_r2(const RadialState& s, const Grid& g, const ModelParams& mp);

// I(t) = int_{W(r) > |t|} (W(r) - |t|)^kappa e(u) dx with W(r) = r or 1 + r
// by weight kind.  Nonincreasing in |t| along the flow.
double weighted_energy(const RadialState& s, const Grid& g, const ModelParams& mp, double t);

// Energy outside the ball of radius R; partial cell handled by linear
// interpolation of the density.  weighted_energy with kappa = 0 reduces to
// this exactly.
double exterior_energy(const RadialState& s, const Grid& g, const ModelParams& mp, double R);

// sup_r r^(4/(p+3)) |u| / E^(2/(p+3)) with E = int(|grad u|^2 + |u|^(p+1));
// bounded by an absolute constant across the flow.
double pointwise_decay_ratio(const RadialState& s, const Grid& g, const ModelParams& mp);

struct ChargePair {
  double q0 = 0.0;
  double q1 = 0.0;
  double total() const { return q0 + q1; }
};

// Conformal charge Q = Q0 + Q1 of (u, u_t) at time t, reduced to radial form:
//   Q0 = 4 pi int [(v + t(w' - u))^2 + (t v + w + r w')^2] dr
//   Q1 = (2/(p+1)) * 4 pi int (r^2 + t^2) |u|^(p+1) r^2 dr
// d/dt Q = 4(3-p) t/(p+1) * int |u|^(p+1) dx along the flow.
ChargePair conformal_charge(const RadialState& s, const Grid& g, const ModelParams& mp, double t);

// Squared homogeneous Sobolev norm |u|_{H^s}^2, s in [0,1], of the radial
// function with reduced profile w: 4 pi int_0^inf xi^(2s) |W(xi)|^2 dxi with
// W the sine transform of w.  s = 1 matches 2*gradient; s = 0 matches the
// L^2 norm of u.
double sobolev_norm_sq(const ArrayRef& w, const Grid& g, double s);
double sobolev_norm_sq(const RadialState& s, const Grid& g, double order);

}  // namespace rwave
