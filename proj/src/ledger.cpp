#include "rwave/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rwave/free_wave.hpp"
#include "rwave/functionals.hpp"

namespace rwave {

Ledger make_ledger(const std::vector<double>& radii, double T_max, const Grid& g) {
  if (!(T_max >= 0.0)) fail_config("ledger: need T_max >= 0");
  Ledger led;
  led.radii = radii;
  std::sort(led.radii.begin(), led.radii.end());
  for (double R : led.radii)
    if (!(R > 0.0) || !(R < g.r_max))
      fail_config("ledger: tracked radius " + std::to_string(R) + " outside (0, r_max)");
  led.T_max = T_max;
  led.half_T = 0.5 * T_max;
  double edge = 1.0;
  led.win_edges.push_back(edge);
  while (edge < T_max) {
    edge *= 2.0;
    led.win_edges.push_back(edge);
  }
  const std::size_t m = led.radii.size();
  led.int_interior_e.assign(m, 0.0);
  led.int_trace_u2.assign(m, 0.0);
  led.int_interior_pot.assign(m, 0.0);
  led.int_ext_mor.assign(m, 0.0);
  led.int_key_rhs.assign(m, 0.0);
  led.l2p2_windows.assign(led.win_edges.size(), 0.0);
  led.prev_interior_e.assign(m, 0.0);
  led.prev_trace.assign(m, 0.0);
  led.prev_interior_pot.assign(m, 0.0);
  led.prev_ext_mor.assign(m, 0.0);
  led.prev_ext_e.assign(m, 0.0);
  return led;
}

namespace {

std::size_t window_index(const Ledger& led, double tau) {
  for (std::size_t i = 0; i < led.win_edges.size(); ++i)
    if (tau < led.win_edges[i]) return i;
  return led.win_edges.size() - 1;
}

// Distribute the trapezoid piece of the L^{2(p-1)} integrand over the dyadic
// windows and the trailing half-interval, splitting at crossed edges.
void add_l2p2_piece(Ledger& led, double t0, double f0, double t1, double f1) {
  if (!(t1 > t0)) return;
  led.l2p2 += 0.5 * (f0 + f1) * (t1 - t0);
  const double df_dt = (f1 - f0) / (t1 - t0);
  double a = t0, fa = f0;
  while (a < t1) {
    const std::size_t i = window_index(led, a);
    double b = std::min(t1, led.win_edges[i]);
    if (!(b > a)) b = t1;
    const double fb = f0 + df_dt * (b - t0);
    led.l2p2_windows[i] += 0.5 * (fa + fb) * (b - a);
    a = b;
    fa = fb;
  }
  if (t1 > led.half_T) {
    const double c = std::max(t0, led.half_T);
    const double fc = f0 + df_dt * (c - t0);
    led.l2p2_last_half += 0.5 * (fc + f1) * (t1 - c);
  }
}

}  // namespace

void accumulate(Ledger& led, const RadialState& s, const Grid& g, double t, double dt,
                const ModelParams& mp) {
  const std::size_t m = led.radii.size();
  const Array d = energy_density_r2(s, g, mp);
  const Array u = u_values(s, g);
  const Array up1 = u.abs().pow(mp.p + 1.0);
  const Array pot_dens = up1 * g.r.square();
  Array mor_dens = up1 * g.r;  // |u|^(p+1)/|x| against the r^2 measure
  mor_dens[0] = 0.0;
  const Array l2_dens = u.abs().pow(2.0 * (mp.p - 1.0)) * g.r.square();

  const double e_tot = kFourPi * g.integrate(d);
  const double pot_tot = kFourPi * g.integrate(pot_dens);
  const double l2_now = kFourPi * g.integrate(l2_dens);
  if (!std::isfinite(e_tot) || !std::isfinite(pot_tot) || !std::isfinite(l2_now))
    fail_compute("ledger: non-finite integrand at t = " + std::to_string(t));

  std::vector<double> interior_e(m), trace(m), interior_pot(m), ext_mor(m), ext_e(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double R = led.radii[i];
    ext_e[i] = kFourPi * cut_weighted_integral(d, g, R, 0.0);
    interior_e[i] = e_tot - ext_e[i];
    const double wR = interp(s.w, g, R);
    trace[i] = (wR / R) * (wR / R);
    interior_pot[i] = pot_tot - kFourPi * cut_weighted_integral(pot_dens, g, R, 0.0);
    ext_mor[i] = kFourPi * cut_weighted_integral(mor_dens, g, R, 0.0);
  }

  const double tau = std::abs(t);
  if (led.has_prev && tau > led.prev_tau) {
    const double h = tau - led.prev_tau;
    for (std::size_t i = 0; i < m; ++i) {
      led.int_interior_e[i] += 0.5 * (led.prev_interior_e[i] + interior_e[i]) * h;
      led.int_trace_u2[i] += 0.5 * (led.prev_trace[i] + trace[i]) * h;
      led.int_interior_pot[i] += 0.5 * (led.prev_interior_pot[i] + interior_pot[i]) * h;
      led.int_ext_mor[i] += 0.5 * (led.prev_ext_mor[i] + ext_mor[i]) * h;
      // Exterior energy only counts while |t| <= R; split the step at R.
      const double R = led.radii[i];
      if (led.prev_tau < R) {
        const double b = std::min(tau, R);
        const double fb =
            led.prev_ext_e[i] + (ext_e[i] - led.prev_ext_e[i]) * (b - led.prev_tau) / h;
        led.int_key_rhs[i] += 0.5 * (led.prev_ext_e[i] + fb) * (b - led.prev_tau);
      }
    }
    add_l2p2_piece(led, led.prev_tau, led.prev_l2p2, tau, l2_now);
    ++led.steps;
  }

  led.has_prev = true;
  led.prev_tau = tau;
  led.prev_interior_e = std::move(interior_e);
  led.prev_trace = std::move(trace);
  led.prev_interior_pot = std::move(interior_pot);
  led.prev_ext_mor = std::move(ext_mor);
  led.prev_ext_e = std::move(ext_e);
  led.prev_l2p2 = l2_now;
}

Ledger merge(const Ledger& a, const Ledger& b) {
  if (a.radii != b.radii || a.win_edges.size() != b.win_edges.size())
    fail_compute("ledger merge: mismatched layouts");
  Ledger out = a;
  for (std::size_t i = 0; i < a.radii.size(); ++i) {
    out.int_interior_e[i] += b.int_interior_e[i];
    out.int_trace_u2[i] += b.int_trace_u2[i];
    out.int_interior_pot[i] += b.int_interior_pot[i];
    out.int_ext_mor[i] += b.int_ext_mor[i];
    out.int_key_rhs[i] += b.int_key_rhs[i];
  }
  out.l2p2 += b.l2p2;
  for (std::size_t i = 0; i < out.l2p2_windows.size(); ++i)
    out.l2p2_windows[i] += b.l2p2_windows[i];
  out.l2p2_last_half += b.l2p2_last_half;
  out.steps += b.steps;
  out.has_prev = false;
  return out;
}

std::vector<MorawetzRow> morawetz_report(const Ledger& led, const ModelParams& mp, double E,
                                         double tol_rel) {
  std::vector<MorawetzRow> rows;
  const double p = mp.p;
  for (std::size_t i = 0; i < led.radii.size(); ++i) {
    const double R = led.radii[i];
    MorawetzRow row;
    row.terms.R = R;
    row.terms.interior_energy_avg = led.int_interior_e[i] / (2.0 * R);
    row.terms.sphere_trace = EIGEN_PI * led.int_trace_u2[i];
    row.terms.interior_potential = (p - 3.0) / (2.0 * (p + 1.0) * R) * led.int_interior_pot[i];
    row.terms.exterior_morawetz = (p - 1.0) / (2.0 * (p + 1.0)) * led.int_ext_mor[i];
    row.sum = row.terms.sum();
    row.residual_32 = E - row.sum;
    row.key_lhs = row.terms.exterior_morawetz;
    row.key_rhs = led.int_key_rhs[i] / (2.0 * R);
    row.inequality_ok = row.residual_32 >= -tol_rel * E;
    row.key_ok = row.key_lhs <= row.key_rhs + tol_rel * E;
    rows.push_back(row);
  }
  return rows;
}

DecayFit decay_fit(const Ledger& led, const ModelParams& mp, double I0, double r_min,
                   double r_max) {
  std::vector<double> lx, ly;
  DecayFit fit;
  const double coef = (mp.p - 1.0) / (2.0 * (mp.p + 1.0));
  for (std::size_t i = 0; i < led.radii.size(); ++i) {
    const double R = led.radii[i];
    const double M = coef * led.int_ext_mor[i];
    if (R < r_min || R > r_max || !(M > 0.0)) continue;
    lx.push_back(std::log(R));
    ly.push_back(std::log(M));
    if (I0 > 0.0) fit.constant_max = std::max(fit.constant_max, M * std::pow(R, mp.kappa) / I0);
  }
  if (lx.empty()) fail_compute("decay_fit: no exterior signal");
  if (lx.size() < 4) {
    std::ostringstream os;
    os << "decay_fit: need at least 4 radii with exterior signal, got " << lx.size();
    fail_compute(os.str());
  }
  const auto n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points = static_cast<int>(lx.size());
  return fit;
}

L2p2Report l2p2_report(const Ledger& led) {
  L2p2Report rep;
  rep.total = led.l2p2;
  rep.window_edges = led.win_edges;
  rep.window_values = led.l2p2_windows;
  rep.window_fractions.resize(led.l2p2_windows.size(), 0.0);
  if (rep.total > 0.0) {
    for (std::size_t i = 0; i < rep.window_values.size(); ++i)
      rep.window_fractions[i] = rep.window_values[i] / rep.total;
    rep.last_half_fraction = led.l2p2_last_half / rep.total;
  }
  return rep;
}

std::vector<double> ScatterRecord::consecutive() const {
  std::vector<double> out;
  for (Eigen::Index k = 0; k + 1 < delta.rows(); ++k) out.push_back(delta(k, k + 1));
  return out;
}

ScatterRecord scatter_extract(const std::vector<RadialState>& snapshots, const Grid& g) {
  if (snapshots.empty()) fail_compute("scatter_extract: no snapshots");
  ScatterRecord rec;
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const RadialState& s = snapshots[k];
    if (k > 0 && !(s.t > snapshots[k - 1].t))
      fail_compute("scatter_extract: snapshot times must increase");
    const double a = support_radius(s, g);
    if (a >= g.r_max - 2.0 * g.dr) {
      std::ostringstream os;
      os << "scatter_extract: snapshot at t = " << s.t
         << " reaches the outer boundary (support radius " << a << " of r_max " << g.r_max
         << ")";
      fail_compute(os.str());
    }
    rec.times.push_back(s.t);
    rec.pulled_back.push_back(free_evolve(s, g, -s.t));
  }
  const auto m = static_cast<Eigen::Index>(snapshots.size());
  rec.delta = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = j + 1; k < m; ++k) {
      const double d = std::sqrt(pair_norm_sq(rec.pulled_back[j], rec.pulled_back[k], g));
      rec.delta(j, k) = d;
      rec.delta(k, j) = d;
    }
  return rec;
}

}  // namespace rwave
