#include "rwave/free_wave.hpp"

#include <cmath>

namespace rwave {

FreeEvolver::FreeEvolver(const RadialState& init, const Grid& g)
    : g_(g), w0_(init.w), v0_(init.v), t0_(init.t) {
  if (!init.w.allFinite() || !init.v.allFinite())
    fail_compute("free_evolve: non-finite initial data");
  // Exact antiderivative of the piecewise-linear v0 at nodes.
  V_.resize(g_.n);
  V_[0] = 0.0;
  for (Index j = 0; j + 1 < g_.n; ++j)
    V_[j + 1] = V_[j] + 0.5 * g_.dr * (v0_[j] + v0_[j + 1]);
  d_ = deriv(w0_, g_);
}

namespace {

// Piecewise-linear evaluation on [0, r_max]; zero beyond the grid.
double pl_eval(const Array& f, const Grid& g, double x) {
  if (x >= g.r_max) return 0.0;
  Index j = static_cast<Index>(std::floor(x / g.dr));
  if (j > g.n - 2) j = g.n - 2;
  if (x < g.r[j] && j > 0) --j;
  const double theta = (x - g.r[j]) / g.dr;
  return (1.0 - theta) * f[j] + theta * f[j + 1];
}

}  // namespace

double FreeEvolver::w_odd(double s) const {
  const double a = std::abs(s);
  const double val = pl_eval(w0_, g_, a);
  return s < 0.0 ? -val : val;
}

double FreeEvolver::v_odd(double s) const {
  const double a = std::abs(s);
  const double val = pl_eval(v0_, g_, a);
  return s < 0.0 ? -val : val;
}

double FreeEvolver::V_even(double s) const {
  const double a = std::abs(s);
  if (a >= g_.r_max) return V_[g_.n - 1];  // v0 vanishes beyond the grid
  Index j = static_cast<Index>(std::floor(a / g_.dr));
  if (j > g_.n - 2) j = g_.n - 2;
  if (a < g_.r[j] && j > 0) --j;
  const double h = a - g_.r[j];
  const double slope = (v0_[j + 1] - v0_[j]) / g_.dr;
  return V_[j] + v0_[j] * h + 0.5 * slope * h * h;
}

double FreeEvolver::dw_even(double s) const {
  return pl_eval(d_, g_, std::abs(s));
}

RadialState FreeEvolver::at(double t) const {
  RadialState out;
  out.w.resize(g_.n);
  out.v.resize(g_.n);
  out.t = t0_ + t;
  for (Index j = 0; j < g_.n; ++j) {
    const double rp = g_.r[j] + t;
    const double rm = g_.r[j] - t;
    out.w[j] = 0.5 * (w_odd(rp) + w_odd(rm)) + 0.5 * (V_even(rp) - V_even(rm));
    out.v[j] = 0.5 * (dw_even(rp) - dw_even(rm)) + 0.5 * (v_odd(rp) + v_odd(rm));
  }
  out.w[0] = 0.0;  // odd symmetry is exact at the origin
  return out;
}

RadialState free_evolve(const RadialState& s, const Grid& g, double t) {
  if (!std::isfinite(t)) fail_compute("free_evolve: non-finite time");
  return FreeEvolver(s, g).at(t);
}

double linear_energy(const RadialState& s, const Grid& g) {
  const Array wp = deriv(s.w, g);
  return 0.5 * quad(wp.square() + s.v.square(), g);
}

double pair_norm_sq(const RadialState& a, const RadialState& b, const Grid& g) {
  RadialState diff;
  diff.w = a.w - b.w;
  diff.v = a.v - b.v;
  return 2.0 * linear_energy(diff, g);
}

}  // namespace rwave
