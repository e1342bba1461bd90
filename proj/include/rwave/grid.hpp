// Uniform radial mesh on [0, r_max] with trapezoid quadrature, second-order
// differentiation, and weighted integrals against the singular cut weight
// (r - c)^kappa that appears in the escaping-energy functional.
#pragma once

#include "rwave/types.hpp"

namespace rwave {

struct Grid {
  double r_max = 0.0;
  Index n = 0;
  double dr = 0.0;
  Array r;      // nodes r_j = j*dr
  Array trapz;  // composite trapezoid weights for int_0^{r_max} f dr

  // int_0^{r_max} f(r) dr by the composite trapezoid rule.
  double integrate(const ArrayRef& f) const { return (trapz * f).sum(); }
};

Grid make_grid(double r_max, Index n);

// 4*pi * int_0^{r_max} values(r) * weight(r) dr.  All volume integrals of the
// lab reduce to this form through dx = 4*pi*r^2 dr.
double quad(const ArrayRef& values, const Grid& g, const ArrayRef& weight);
double quad(const ArrayRef& values, const Grid& g);  // weight identically 1

template <class F>
double quad(const ArrayRef& values, const Grid& g, F&& weight_of_r) {
  Array w(g.n);
  for (Index j = 0; j < g.n; ++j) w[j] = weight_of_r(g.r[j]);
  return quad(values, g, w);
}

// First derivative, second order: central in the interior, one-sided at ends.
Array deriv(const ArrayRef& f, const Grid& g);

// Piecewise-linear interpolation of nodal values at x in [0, r_max].
double interp(const ArrayRef& f, const Grid& g, double x);

// int_{max(cut,0)}^{r_max} (r - cut)^kappa * D(r) dr where D is the
// piecewise-linear interpolant of `density`.  The weight is integrated in
// closed form against each linear piece, so the kappa < 1 cusp at the cut
// costs no accuracy and the value varies smoothly as the cut moves.
double cut_weighted_integral(const ArrayRef& density, const Grid& g, double cut, double kappa);

}  // namespace rwave
