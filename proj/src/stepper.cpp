#include "rwave/stepper.hpp"

#include <cmath>
#include <sstream>

namespace rwave {

Array nonlinear_force(const RadialState& s, const Grid& g, const ModelParams& mp) {
  const Index n = g.n;
  Array u = u_values(s, g);
  Array f(n);
  f = -u.abs().pow(mp.p) * u.sign() * g.r;
  f[0] = 0.0;  // limit of |u|^(p-1) u * r at the origin
  if (!f.allFinite()) {
    for (Index j = 0; j < n; ++j) {
      if (!std::isfinite(f[j])) {
        std::ostringstream os;
        os << "nonlinear_force: non-finite value at node " << j << " (r = " << g.r[j] << ")";
        fail_compute(os.str());
      }
    }
  }
  return f;
}

namespace {

Array acceleration(const RadialState& s, const Grid& g, const StepperConfig& cfg,
                   const ModelParams& mp) {
  const Index n = g.n;
  Array a = Array::Zero(n);
  const double idr2 = 1.0 / (g.dr * g.dr);
  a.segment(1, n - 2) =
      (s.w.segment(2, n - 2) - 2.0 * s.w.segment(1, n - 2) + s.w.segment(0, n - 2)) * idr2;
  if (cfg.nonlinearity) a += nonlinear_force(s, g, mp);
  a[0] = 0.0;
  a[n - 1] = 0.0;  // both ends pinned
  return a;
}

}  // namespace

RadialState step(const RadialState& s, const Grid& g, const StepperConfig& cfg,
                 const ModelParams& mp, double dt) {
  const Index n = g.n;
  const double wmax_before = s.w.abs().maxCoeff();

  RadialState out;
  out.t = s.t + dt;

  const Array a0 = acceleration(s, g, cfg, mp);
  Array vh = s.v + (0.5 * dt) * a0;
  out.w = s.w + dt * vh;
  out.w[0] = 0.0;
  out.w[n - 1] = 0.0;
  out.v = std::move(vh);
  const Array a1 = acceleration(out, g, cfg, mp);
  out.v += (0.5 * dt) * a1;
  out.v[0] = 0.0;
  out.v[n - 1] = 0.0;

  if (!out.w.allFinite() || !out.v.allFinite())
    fail_compute("step: non-finite state after step to t = " + std::to_string(out.t));
  const double wmax_after = out.w.abs().maxCoeff();
  if (wmax_before > 0.0 && wmax_after > 10.0 * wmax_before) {
    std::ostringstream os;
    os << "step: instability detected at t = " << out.t << ": max|w| grew from "
       << wmax_before << " to " << wmax_after << " in one step (dt = " << dt
       << ", lambda = " << std::abs(dt) / g.dr << ")";
    fail_compute(os.str());
  }
  return out;
}

EvolveResult evolve(const RadialState& init, const Grid& g, double T,
                    const StepperConfig& cfg, const ModelParams& mp,
                    const std::vector<Observer>& observers) {
  if (!(cfg.cfl_lambda > 0.0) || cfg.cfl_lambda > 1.0)
    fail_config("evolve: need 0 < lambda <= 1, got " + std::to_string(cfg.cfl_lambda));
  if (!std::isfinite(T)) fail_config("evolve: non-finite T");

  EvolveResult res;
  res.state = init;

  const double a = support_radius(init, g);
  if (a + std::abs(T) > g.r_max) {
    std::ostringstream os;
    os << "support bound a + |T| = " << a + std::abs(T) << " exceeds r_max = " << g.r_max
       << "; the hard-zero boundary is no longer signal-free";
    if (!cfg.allow_boundary_touch)
      fail_config("evolve: " + os.str() + " (set allow_boundary_touch to acknowledge)");
    res.warnings.push_back(os.str());
  }

  for (const auto& obs : observers) obs(res.state, init.t, 0.0);

  const double dt_full = cfg.cfl_lambda * g.dr * (T < 0.0 ? -1.0 : 1.0);
  const double target = init.t + T;
  const double tiny = 1e-12 * std::max(1.0, std::abs(target));
  double t = init.t;
  while (std::abs(target - t) > tiny) {
    double dt = dt_full;
    if (std::abs(target - t) < std::abs(dt_full)) dt = target - t;  // land exactly on T
    res.state = step(res.state, g, cfg, mp, dt);
    t += dt;
    res.state.t = t;
    ++res.steps;
    for (const auto& obs : observers) obs(res.state, t, dt);
  }
  return res;
}

}  // namespace rwave
