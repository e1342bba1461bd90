#include "rwave/state.hpp"

#include <cmath>

namespace rwave {

RadialState zero_state(const Grid& g) {
  RadialState s;
  s.w = Array::Zero(g.n);
  s.v = Array::Zero(g.n);
  s.t = 0.0;
  return s;
}

Array u_values(const RadialState& s, const Grid& g) {
  Array u(g.n);
  u.tail(g.n - 1) = s.w.tail(g.n - 1) / g.r.tail(g.n - 1);
  u[0] = s.w[1] / g.dr;
  return u;
}

Array ut_values(const RadialState& s, const Grid& g) {
  Array ut(g.n);
  ut.tail(g.n - 1) = s.v.tail(g.n - 1) / g.r.tail(g.n - 1);
  ut[0] = s.v[1] / g.dr;
  return ut;
}

double support_radius(const RadialState& s, const Grid& g, double rel_tol) {
  const double scale = std::max(s.w.abs().maxCoeff(), s.v.abs().maxCoeff());
  if (scale == 0.0) return 0.0;
  const double tol = rel_tol * scale;
  for (Index j = g.n - 1; j >= 0; --j) {
    if (std::abs(s.w[j]) > tol || std::abs(s.v[j]) > tol) return g.r[j];
  }
  return 0.0;
}

}  // namespace rwave
