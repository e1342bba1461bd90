// RadialState holds the reduced pair (w, w_t) with w(r) = r*u(r), sampled on
// a Grid.  The Dirichlet condition w(0) = 0 encodes radial regularity of u.
#pragma once

#include "rwave/grid.hpp"
#include "rwave/types.hpp"

namespace rwave {

struct RadialState {
  Array w;
  Array v;  // w_t
  double t = 0.0;
};

RadialState zero_state(const Grid& g);

// u_j = w_j / r_j for j >= 1; u_0 is the limit w/r -> w'(0), taken as w_1/dr.
Array u_values(const RadialState& s, const Grid& g);

// u_t with the same origin convention.
Array ut_values(const RadialState& s, const Grid& g);

// Largest node radius where |w| or |v| exceeds rel_tol times its max; 0 for
// the zero state.  Used for light-cone bookkeeping and boundary checks.
double support_radius(const RadialState& s, const Grid& g, double rel_tol = 1e-14);

}  // namespace rwave
