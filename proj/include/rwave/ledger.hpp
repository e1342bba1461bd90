// Space-time accumulators along an evolution and the end-of-run analyses:
// localized Morawetz terms per radius, the exterior decay law, the global
// L^{2(p-1)} integral with its dyadic time profile, and scattering-profile
// extraction through the free propagator.
//
// A ledger is fed once per accepted step (observer contract, trapezoid in
// time) and is owned by a single evolution; forward and backward ledgers of
// a two-sided run are combined with merge().
#pragma once

#include <vector>

#include "rwave/grid.hpp"
#include "rwave/params.hpp"
#include "rwave/state.hpp"
#include "rwave/types.hpp"

namespace rwave {

struct MorawetzTerms {
  double R = 0.0;
  double interior_energy_avg = 0.0;  // (1/2R) time-integral of energy in |x| < R
  double sphere_trace = 0.0;         // (1/4R^2) time-integral of |u|^2 over |x| = R
  double interior_potential = 0.0;   // ((p-3)/(2(p+1)R)) of |u|^(p+1) in |x| < R
  double exterior_morawetz = 0.0;    // ((p-1)/(2(p+1))) of |u|^(p+1)/|x| in |x| > R
  double sum() const {
    return interior_energy_avg + sphere_trace + interior_potential + exterior_morawetz;
  }
};

struct Ledger {
  std::vector<double> radii;
  double T_max = 0.0;
  double half_T = 0.0;
  std::vector<double> win_edges;  // dyadic upper edges 1, 2, 4, ... >= T_max

  // Raw time integrals (coefficients applied at report time).
  std::vector<double> int_interior_e;    // energy inside R
  std::vector<double> int_trace_u2;      // u(R,t)^2
  std::vector<double> int_interior_pot;  // int_{|x|<R} |u|^(p+1) dx
  std::vector<double> int_ext_mor;       // int_{|x|>R} |u|^(p+1)/|x| dx
  std::vector<double> int_key_rhs;       // energy outside R, |t| <= R window only
  double l2p2 = 0.0;                     // int |u|^(2(p-1)) dx dt
  std::vector<double> l2p2_windows;      // split by dyadic |t| window
  double l2p2_last_half = 0.0;           // |t| in [T_max/2, T_max]
  long steps = 0;

  // Previous integrand samples for the trapezoid rule.
  bool has_prev = false;
  double prev_tau = 0.0;
  std::vector<double> prev_interior_e, prev_trace, prev_interior_pot, prev_ext_mor,
      prev_ext_e;
  double prev_l2p2 = 0.0;
};

Ledger make_ledger(const std::vector<double>& radii, double T_max, const Grid& g);

// Observer-contract update: called once per accepted step with the step
// actually taken; a leading call with dt = 0 seeds the trapezoid.
void accumulate(Ledger& led, const RadialState& s, const Grid& g, double t, double dt,
                const ModelParams& mp);

Ledger merge(const Ledger& a, const Ledger& b);

struct MorawetzRow {
  MorawetzTerms terms;
  double sum = 0.0;
  double residual_32 = 0.0;  // E - sum; nonnegative up to tolerance
  double key_lhs = 0.0;      // exterior Morawetz term
  double key_rhs = 0.0;      // (1/2R) int_{-R}^{R} (energy outside R) dt
  bool inequality_ok = true;
  bool key_ok = true;
};

std::vector<MorawetzRow> morawetz_report(const Ledger& led, const ModelParams& mp, double E,
                                         double tol_rel = 1e-2);

struct DecayFit {
  double slope = 0.0;      // log-log slope of exterior Morawetz vs R
  double intercept = 0.0;
  double constant_max = 0.0;  // max_R M(R) R^kappa / I0
  int points = 0;
};

DecayFit decay_fit(const Ledger& led, const ModelParams& mp, double I0, double r_min = 0.0,
                   double r_max = 1e300);

struct L2p2Report {
  double total = 0.0;
  std::vector<double> window_edges;      // upper edges of the dyadic |t| windows
  std::vector<double> window_values;
  std::vector<double> window_fractions;
  double last_half_fraction = 0.0;       // scattering evidence: contribution of [T/2, T]
};

L2p2Report l2p2_report(const Ledger& led);

struct ScatterRecord {
  std::vector<double> times;
  std::vector<RadialState> pulled_back;  // S_L(-T_k)(u, u_t)(T_k)
  Eigen::MatrixXd delta;                 // pairwise H1 x L2 distances
  std::vector<double> consecutive() const;
};

ScatterRecord scatter_extract(const std::vector<RadialState>& snapshots, const Grid& g);

}  // namespace rwave
