#include "rwave/grid.hpp"

#include <cmath>
#include <string>

namespace rwave {

Grid make_grid(double r_max, Index n) {
  if (!(n >= 16)) fail_config("make_grid: need n >= 16, got " + std::to_string(n));
  if (!std::isfinite(r_max) || !(r_max > 0.0))
    fail_config("make_grid: r_max must be finite and positive");
  Grid g;
  g.r_max = r_max;
  g.n = n;
  g.dr = r_max / static_cast<double>(n - 1);
  g.r = Array::LinSpaced(n, 0.0, r_max);
  g.r[0] = 0.0;  // exact origin
  g.trapz = Array::Constant(n, g.dr);
  g.trapz[0] = 0.5 * g.dr;
  g.trapz[n - 1] = 0.5 * g.dr;
  return g;
}

double quad(const ArrayRef& values, const Grid& g, const ArrayRef& weight) {
  if (values.size() != g.n) fail_compute("quad: values length mismatch");
  if (!values.allFinite()) fail_compute("quad: non-finite value in integrand");
  return kFourPi * g.integrate(values * weight);
}

double quad(const ArrayRef& values, const Grid& g) {
  if (values.size() != g.n) fail_compute("quad: values length mismatch");
  if (!values.allFinite()) fail_compute("quad: non-finite value in integrand");
  return kFourPi * g.integrate(values);
}

Array deriv(const ArrayRef& f, const Grid& g) {
  const Index n = g.n;
  Array d(n);
  const double h2 = 2.0 * g.dr;
  d.segment(1, n - 2) = (f.segment(2, n - 2) - f.segment(0, n - 2)) / h2;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / h2;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / h2;
  return d;
}

double interp(const ArrayRef& f, const Grid& g, double x) {
  if (x <= 0.0) return f[0];
  if (x >= g.r_max) return f[g.n - 1];
  Index j = static_cast<Index>(std::floor(x / g.dr));
  if (j > g.n - 2) j = g.n - 2;
  if (x < g.r[j] && j > 0) --j;  // guard against floating floor
  const double theta = (x - g.r[j]) / g.dr;
  return (1.0 - theta) * f[j] + theta * f[j + 1];
}

double cut_weighted_integral(const ArrayRef& density, const Grid& g, double cut, double kappa) {
  if (density.size() != g.n) fail_compute("cut_weighted_integral: density length mismatch");
  if (cut >= g.r_max) return 0.0;
  Index j0 = 0;
  if (cut > 0.0) {
    j0 = static_cast<Index>(std::floor(cut / g.dr));
    if (j0 > 0) --j0;  // start one cell early; empty cells are skipped below
  }
  const double k1 = kappa + 1.0;
  const double k2 = kappa + 2.0;
  double total = 0.0;
  for (Index j = j0; j + 1 < g.n; ++j) {
    const double ra = std::max(g.r[j], cut);
    const double rb = g.r[j + 1];
    if (ra >= rb) continue;
    const double sa = ra - cut;
    const double sb = rb - cut;
    const double beta = (density[j + 1] - density[j]) / g.dr;
    const double d_cut = density[j] + beta * (cut - g.r[j]);  // density extended to the cut
    const double pa1 = sa > 0.0 ? std::pow(sa, k1) : 0.0;
    const double pb1 = std::pow(sb, k1);
    const double pa2 = sa > 0.0 ? std::pow(sa, k2) : 0.0;
    const double pb2 = std::pow(sb, k2);
    total += d_cut * (pb1 - pa1) / k1 + beta * (pb2 - pa2) / k2;
  }
  return total;
}

}  // namespace rwave
