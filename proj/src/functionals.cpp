#include "rwave/functionals.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace rwave {

EnergySplit energy(const RadialState& s, const Grid& g, const ModelParams& mp) {
  EnergySplit es;
  const Array wp = deriv(s.w, g);
  es.gradient = 0.5 * quad(wp.square(), g);
  es.kinetic = 0.5 * quad(s.v.square(), g);
  const Array u = u_values(s, g);
  es.potential = quad(u.abs().pow(mp.p + 1.0) * g.r.square(), g) / (mp.p + 1.0);
  es.total = es.gradient + es.kinetic + es.potential;
  return es;
}

Array energy_density_r2(const RadialState& s, const Grid& g, const ModelParams& mp) {
  const Array wp = deriv(s.w, g);
  const Array u = u_values(s, g);
  // u_r * r = w' - u, so (u_r^2/2) r^2 = (w' - u)^2 / 2; u_t^2 r^2 = v^2.
  Array d = 0.5 * (wp - u).square() + 0.5 * s.v.square() +
            u.abs().pow(mp.p + 1.0) * g.r.square() / (mp.p + 1.0);
  d[0] = 0.0;  // r^2 e(u) vanishes at the origin
  return d;
}

double weighted_energy(const RadialState& s, const Grid& g, const ModelParams& mp, double t) {
  const Array d = energy_density_r2(s, g, mp);
  const double cut = std::abs(t) - mp.weight_offset();
  return kFourPi * cut_weighted_integral(d, g, cut, mp.kappa);
}

double exterior_energy(const RadialState& s, const Grid& g, const ModelParams& mp, double R) {
  if (!(R >= 0.0) || R > g.r_max)
    fail_compute("exterior_energy: R = " + std::to_string(R) + " outside [0, r_max]");
  const Array d = energy_density_r2(s, g, mp);
  return kFourPi * cut_weighted_integral(d, g, R, 0.0);
}

double pointwise_decay_ratio(const RadialState& s, const Grid& g, const ModelParams& mp) {
  const EnergySplit es = energy(s, g, mp);
  const double e_lemma = 2.0 * es.gradient + (mp.p + 1.0) * es.potential;
  if (!(e_lemma > 0.0)) return 0.0;
  const Array u = u_values(s, g);
  const double expo = 4.0 / (mp.p + 3.0);
  double sup = 0.0;
  for (Index j = 1; j < g.n; ++j)
    sup = std::max(sup, std::pow(g.r[j], expo) * std::abs(u[j]));
  return sup / std::pow(e_lemma, 2.0 / (mp.p + 3.0));
}

ChargePair conformal_charge(const RadialState& s, const Grid& g, const ModelParams& mp,
                            double t) {
  const Array wp = deriv(s.w, g);
  const Array u = u_values(s, g);
  // (r psi + t phi_r) r = v + t (w' - u); (t psi + 2 phi + r phi_r) r = t v + w + r w'.
  Array a = s.v + t * (wp - u);
  Array b = t * s.v + s.w + g.r * wp;
  a[0] = 0.0;
  b[0] = 0.0;
  ChargePair q;
  q.q0 = quad(a.square() + b.square(), g);
  q.q1 = 2.0 / (mp.p + 1.0) *
         quad(u.abs().pow(mp.p + 1.0) * (g.r.square() + t * t) * g.r.square(), g);
  if (!std::isfinite(q.q0) || !std::isfinite(q.q1))
    fail_compute("conformal_charge: non-finite charge (data lack the required decay)");
  return q;
}

double sobolev_norm_sq(const ArrayRef& w, const Grid& g, double s) {
  if (!(s >= 0.0) || !(s <= 1.0))
    fail_compute("sobolev_norm_sq: order s = " + std::to_string(s) + " outside [0, 1]");
  if (w.size() != g.n) fail_compute("sobolev_norm_sq: length mismatch");
  const Index N = g.n - 1;
  // DST-I of the interior nodes via a length-2N complex FFT of the odd
  // extension: S_m = sum_j w_j sin(pi j m / N).
  std::vector<std::complex<double>> x(2 * N, 0.0), X;
  for (Index j = 1; j < N; ++j) {
    x[j] = w[j];
    x[2 * N - j] = -w[j];
  }
  Eigen::FFT<double> fft;
  fft.fwd(X, x);
  const double dxi = EIGEN_PI / g.r_max;
  const double coef = 2.0 / EIGEN_PI * g.dr * g.dr;  // (sqrt(2/pi) dr)^2
  double total = 0.0;
  for (Index m = 1; m < N; ++m) {
    const double Sm = -0.5 * X[m].imag();
    const double xi = dxi * static_cast<double>(m);
    total += std::pow(xi, 2.0 * s) * coef * Sm * Sm * dxi;
  }
  return kFourPi * total;
}

double sobolev_norm_sq(const RadialState& s, const Grid& g, double order) {
  return sobolev_norm_sq(s.w, g, order);
}

}  // namespace rwave
