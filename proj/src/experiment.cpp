#include "rwave/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "rwave/free_wave.hpp"
#include "rwave/rational.hpp"
#include "rwave/stepper.hpp"

namespace rwave {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

// Per-direction evolution with all observers attached.
struct DirectionResult {
  Ledger ledger;
  std::vector<SeriesRow> rows;
  std::vector<RadialState> snapshots;
  double i_max_step_increase = 0.0;
  double i_max = 0.0;
  RadialState final_state;
  long steps = 0;
  std::vector<std::string> warnings;
};

DirectionResult run_direction(const RunConfig& cfg, const Grid& g, const RadialState& s0,
                              double T_signed) {
  const ModelParams& mp = cfg.params;
  StepperConfig scfg;
  scfg.cfl_lambda = cfg.cfl_lambda;
  scfg.nonlinearity = cfg.nonlinearity;
  scfg.allow_boundary_touch = cfg.allow_boundary_touch;

  DirectionResult dir;
  dir.ledger = make_ledger(cfg.radii, std::abs(T_signed), g);

  long step_idx = 0;
  double prev_I = 0.0;
  bool have_I = false;
  double last_sampled_t = std::nan("");
  std::size_t next_snapshot = 0;
  std::vector<double> snap_times = cfg.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());

  auto sample_row = [&](const RadialState& s, double t, double I_now) {
    SeriesRow row;
    row.t = t;
    row.e = energy(s, g, mp);
    row.I_t = I_now;
    row.ratio = pointwise_decay_ratio(s, g, mp);
    row.q = conformal_charge(s, g, mp, t);
    const Array u = u_values(s, g);
    row.pot_int = quad(u.abs().pow(mp.p + 1.0) * g.r.square(), g);
    for (double R : cfg.radii) row.ext_e.push_back(exterior_energy(s, g, mp, R));
    dir.rows.push_back(std::move(row));
    last_sampled_t = t;
  };

  std::vector<Observer> obs;
  obs.push_back([&](const RadialState& s, double t, double dt) {
    accumulate(dir.ledger, s, g, t, dt, mp);
  });
  obs.push_back([&](const RadialState& s, double t, double dt) {
    const double I_now = weighted_energy(s, g, mp, t);
    if (have_I) dir.i_max_step_increase = std::max(dir.i_max_step_increase, I_now - prev_I);
    dir.i_max = std::max(dir.i_max, I_now);
    prev_I = I_now;
    have_I = true;
    if (step_idx % cfg.cadence == 0) sample_row(s, t, I_now);
    if (T_signed > 0.0 && next_snapshot < snap_times.size() && dt != 0.0 &&
        t >= snap_times[next_snapshot] - 0.5 * std::abs(dt)) {
      dir.snapshots.push_back(s);
      ++next_snapshot;
    }
    ++step_idx;
  });

  EvolveResult res = evolve(s0, g, T_signed, scfg, mp, obs);
  dir.final_state = res.state;
  dir.steps = res.steps;
  dir.warnings = res.warnings;
  if (last_sampled_t != res.state.t)
    sample_row(res.state, res.state.t, weighted_energy(res.state, g, mp, res.state.t));
  return dir;
}

}  // namespace

RunOutputs run_core(const RunConfig& cfg) {
  validate(cfg);
  RunOutputs out;
  out.cfg = cfg;
  const ModelParams& mp = cfg.params;
  const Grid g = make_grid(cfg.r_max, cfg.n);
  const RadialState s0 = sample_data(cfg.family, g, mp);

  out.e0 = energy(s0, g, mp);
  out.I0 = weighted_energy(s0, g, mp, 0.0);
  out.q_init = conformal_charge(s0, g, mp, 0.0);
  out.discarded_tail_weighted = discarded_tail_weighted(cfg.family, mp, cfg.r_max);
  out.discarded_tail_energy = discarded_tail_energy(cfg.family, mp, cfg.r_max);

  DirectionResult fwd = run_direction(cfg, g, s0, cfg.T);
  out.final_forward = fwd.final_state;
  out.steps_forward = fwd.steps;
  out.i_max_step_increase = fwd.i_max_step_increase;
  out.i_max = fwd.i_max;
  for (auto& w : fwd.warnings) out.warnings.push_back("forward: " + w);

  std::vector<SeriesRow> rows = fwd.rows;
  Ledger merged_ledger = fwd.ledger;
  out.steps_backward = 0;
  if (cfg.run_backward && cfg.T > 0.0) {
    DirectionResult bwd = run_direction(cfg, g, s0, -cfg.T);
    out.steps_backward = bwd.steps;
    out.i_max_step_increase = std::max(out.i_max_step_increase, bwd.i_max_step_increase);
    out.i_max = std::max(out.i_max, bwd.i_max);
    for (auto& w : bwd.warnings) out.warnings.push_back("backward: " + w);
    merged_ledger = merge(fwd.ledger, bwd.ledger);
    // Backward rows (t < 0) prepended in ascending t; drop the duplicate t = 0.
    std::vector<SeriesRow> all(bwd.rows.rbegin(), bwd.rows.rend());
    if (!all.empty()) all.pop_back();
    all.insert(all.end(), rows.begin(), rows.end());
    rows = std::move(all);
  }
  out.rows = std::move(rows);
  out.merged = std::move(merged_ledger);
  out.has_ledger = true;

  out.morawetz = morawetz_report(out.merged, mp, out.e0.total);
  try {
    out.fit = decay_fit(out.merged, mp, out.I0, cfg.fit_r_min, cfg.fit_r_max);
  } catch (const Error& e) {
    out.fit_error = e.what();
  }
  out.l2p2 = l2p2_report(out.merged);

  if (!fwd.snapshots.empty()) out.scatter = scatter_extract(fwd.snapshots, g);

  // Monitors from the sampled series.
  for (const SeriesRow& row : out.rows) {
    if (out.e0.total > 0.0)
      out.energy_drift_rel =
          std::max(out.energy_drift_rel, std::abs(row.e.total - out.e0.total) / out.e0.total);
    out.ratio_max = std::max(out.ratio_max, row.ratio);
  }
  // Q must be nonincreasing on the t >= 0 side.
  double q_prev_fwd = 0.0;
  bool q_started = false;
  for (const SeriesRow& row : out.rows) {
    if (row.t < 0.0) continue;
    if (q_started) out.q_max_increase = std::max(out.q_max_increase, row.q.total() - q_prev_fwd);
    q_prev_fwd = row.q.total();
    q_started = true;
  }
  // Conformal charge law, checked by centered differences on each t > 0 (and
  // mirrored t < 0) side of the sampled series.
  for (std::size_t k = 1; k + 1 < out.rows.size(); ++k) {
    const SeriesRow& a = out.rows[k];
    const SeriesRow& prev = out.rows[k - 1];
    const SeriesRow& next = out.rows[k + 1];
    const double tau = std::abs(a.t);
    if (tau < cfg.qlaw_t_min || tau > cfg.qlaw_t_max) continue;
    if ((prev.t < 0.0) != (a.t < 0.0) || (next.t < 0.0) != (a.t < 0.0)) continue;
    const double dQ = (next.q.total() - prev.q.total()) / (next.t - prev.t);
    const double rhs = 4.0 * (3.0 - mp.p) * a.t / (mp.p + 1.0) * a.pot_int;
    if (rhs != 0.0) {
      out.q_law_max_resid = std::max(out.q_law_max_resid, std::abs(dQ - rhs) / std::abs(rhs));
      out.q_law_checked = true;
    }
  }
  return out;
}

namespace {

json manifest_json(const RunOutputs& out, double wall_ms) {
  const RunConfig& cfg = out.cfg;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = to_flat_map(cfg);

  const Rational pr = rationalize(cfg.params.p);
  json res;
  res["kappa_p_exact"] = kappa_critical_exact(pr).str();
  res["kappa_p"] = kappa_critical(cfg.params.p);
  res["s_p_exact"] = s_critical_exact(pr).str();
  res["s_p"] = cfg.params.s_critical();
  res["kappa_above_critical"] = cfg.params.kappa_above_critical();

  res["E0"] = out.e0.total;
  res["E0_grad"] = out.e0.gradient;
  res["E0_kin"] = out.e0.kinetic;
  res["E0_pot"] = out.e0.potential;
  res["I0"] = out.I0;
  res["Q0_init"] = out.q_init.q0;
  res["Q1_init"] = out.q_init.q1;
  res["discarded_tail_weighted"] = out.discarded_tail_weighted;
  res["discarded_tail_energy"] = out.discarded_tail_energy;

  res["energy_drift_rel"] = out.energy_drift_rel;
  res["I_max_step_increase"] = out.i_max_step_increase;
  res["I_max"] = out.i_max;
  res["I_max_over_I0"] = out.I0 > 0.0 ? out.i_max / out.I0 : 0.0;
  res["ratio_L51_max"] = out.ratio_max;
  res["q_law_max_rel_residual"] = out.q_law_max_resid;
  res["q_law_checked"] = out.q_law_checked;
  res["q_max_increase"] = out.q_max_increase;

  json mor = json::array();
  for (const MorawetzRow& row : out.morawetz) {
    json r;
    r["R"] = row.terms.R;
    r["interior_energy_avg"] = row.terms.interior_energy_avg;
    r["sphere_trace"] = row.terms.sphere_trace;
    r["interior_potential"] = row.terms.interior_potential;
    r["exterior_morawetz"] = row.terms.exterior_morawetz;
    r["sum"] = row.sum;
    r["residual_32"] = row.residual_32;
    r["key_lhs"] = row.key_lhs;
    r["key_rhs"] = row.key_rhs;
    r["inequality_ok"] = row.inequality_ok;
    r["key_ok"] = row.key_ok;
    mor.push_back(r);
  }
  res["morawetz"] = mor;

  if (out.fit) {
    res["decay_slope"] = out.fit->slope;
    res["decay_intercept"] = out.fit->intercept;
    res["decay_constant_max"] = out.fit->constant_max;
    res["decay_points"] = out.fit->points;
  } else {
    res["decay_fit_error"] = out.fit_error;
  }

  res["l2p2_total"] = out.l2p2.total;
  res["l2p2_last_half_fraction"] = out.l2p2.last_half_fraction;
  json wins = json::array();
  for (std::size_t i = 0; i < out.l2p2.window_edges.size(); ++i) {
    json w;
    w["upper_edge"] = out.l2p2.window_edges[i];
    w["value"] = out.l2p2.window_values[i];
    w["fraction"] = out.l2p2.window_fractions[i];
    wins.push_back(w);
  }
  res["l2p2_windows"] = wins;

  if (out.scatter) {
    json sc;
    sc["times"] = out.scatter->times;
    sc["consecutive_deltas"] = out.scatter->consecutive();
    json dm = json::array();
    for (Eigen::Index r = 0; r < out.scatter->delta.rows(); ++r) {
      json rowj = json::array();
      for (Eigen::Index c = 0; c < out.scatter->delta.cols(); ++c)
        rowj.push_back(out.scatter->delta(r, c));
      dm.push_back(rowj);
    }
    sc["delta"] = dm;
    res["scatter"] = sc;
  }

  j["results"] = res;
  j["steps_forward"] = out.steps_forward;
  j["steps_backward"] = out.steps_backward;
  j["warnings"] = out.warnings;
  j["wall_ms"] = wall_ms;
  return j;
}

void write_series(const RunOutputs& out, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail_io("cannot write " + path);
  f << "t\tE\tE_grad\tE_kin\tE_pot\tI_t\tratio_L51\tQ0\tQ1";
  for (double R : out.cfg.radii) f << "\texterior_E_at_R" << fmt_short(R);
  f << "\n";
  for (const SeriesRow& row : out.rows) {
    f << fmt(row.t) << "\t" << fmt(row.e.total) << "\t" << fmt(row.e.gradient) << "\t"
      << fmt(row.e.kinetic) << "\t" << fmt(row.e.potential) << "\t" << fmt(row.I_t) << "\t"
      << fmt(row.ratio) << "\t" << fmt(row.q.q0) << "\t" << fmt(row.q.q1);
    for (double x : row.ext_e) f << "\t" << fmt(x);
    f << "\n";
  }
}

void write_report(const RunOutputs& out, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail_io("cannot write " + path);
  const auto kv = [&f](const std::string& k, const std::string& v) { f << k << " = " << v << "\n"; };
  const auto kvd = [&](const std::string& k, double v) { kv(k, fmt(v)); };

  kv("schema_version", std::to_string(kSchemaVersion));
  kv("preset", out.cfg.preset);
  const Rational pr = rationalize(out.cfg.params.p);
  kv("kappa_p", kappa_critical_exact(pr).str());
  kv("s_p", s_critical_exact(pr).str());
  kv("kappa_above_critical", out.cfg.params.kappa_above_critical() ? "true" : "false");
  kvd("E0", out.e0.total);
  kvd("E0_grad", out.e0.gradient);
  kvd("E0_kin", out.e0.kinetic);
  kvd("E0_pot", out.e0.potential);
  kvd("I0", out.I0);
  kvd("discarded_tail_weighted", out.discarded_tail_weighted);
  kvd("discarded_tail_energy", out.discarded_tail_energy);
  kvd("energy_drift_rel", out.energy_drift_rel);
  kvd("I_max_step_increase", out.i_max_step_increase);
  kvd("I_max_over_I0", out.I0 > 0.0 ? out.i_max / out.I0 : 0.0);
  kvd("ratio_L51_max", out.ratio_max);
  kvd("q_law_max_rel_residual", out.q_law_max_resid);
  kvd("q_max_increase", out.q_max_increase);
  for (const MorawetzRow& row : out.morawetz) {
    const std::string tag = "morawetz_R" + fmt_short(row.terms.R) + "_";
    kvd(tag + "interior_energy_avg", row.terms.interior_energy_avg);
    kvd(tag + "sphere_trace", row.terms.sphere_trace);
    kvd(tag + "interior_potential", row.terms.interior_potential);
    kvd(tag + "exterior_morawetz", row.terms.exterior_morawetz);
    kvd(tag + "sum", row.sum);
    kvd(tag + "residual_32", row.residual_32);
    kvd(tag + "key_rhs", row.key_rhs);
    kv(tag + "inequality_ok", row.inequality_ok ? "true" : "false");
    kv(tag + "key_ok", row.key_ok ? "true" : "false");
  }
  if (out.fit) {
    kvd("decay_slope", out.fit->slope);
    kvd("decay_intercept", out.fit->intercept);
    kvd("decay_constant_max", out.fit->constant_max);
  } else {
    kv("decay_fit_error", out.fit_error);
  }
  kvd("l2p2_total", out.l2p2.total);
  kvd("l2p2_last_half_fraction", out.l2p2.last_half_fraction);
  for (std::size_t i = 0; i < out.l2p2.window_edges.size(); ++i)
    kvd("l2p2_fraction_upto_" + fmt_short(out.l2p2.window_edges[i]),
        out.l2p2.window_fractions[i]);
  if (out.scatter) {
    const auto deltas = out.scatter->consecutive();
    for (std::size_t k = 0; k + 1 < out.scatter->times.size(); ++k)
      kvd("scatter_delta_" + fmt_short(out.scatter->times[k]) + "_" +
              fmt_short(out.scatter->times[k + 1]),
          deltas[k]);
  }
  kv("steps_forward", std::to_string(out.steps_forward));
  kv("steps_backward", std::to_string(out.steps_backward));
  for (std::size_t i = 0; i < out.warnings.size(); ++i)
    kv("warning_" + std::to_string(i), out.warnings[i]);
}

}  // namespace

RunOutputs run_experiment(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutputs out = run_core(cfg);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::create_directories(cfg.out_dir);
  write_series(out, cfg.out_dir + "/series.tsv");
  write_report(out, cfg.out_dir + "/report.txt");
  std::ofstream mf(cfg.out_dir + "/manifest.json");
  if (!mf) fail_io("cannot write " + cfg.out_dir + "/manifest.json");
  mf << manifest_json(out, wall_ms).dump(2) << "\n";
  return out;
}

std::string format_report(const std::string& out_dir) {
  std::ifstream mf(out_dir + "/manifest.json");
  if (!mf) fail_io("no manifest.json under '" + out_dir + "'");
  json j;
  try {
    mf >> j;
  } catch (const std::exception& e) {
    fail_io("corrupt manifest.json under '" + out_dir + "': " + e.what());
  }
  std::ostringstream os;
  const json& res = j.at("results");
  const json& cfg = j.at("config");
  os << "run: preset=" << cfg.value("preset", std::string{}) << " family="
     << cfg.value("family", std::string{}) << " p=" << cfg.value("p", std::string{})
     << " kappa=" << cfg.value("kappa", std::string{}) << "\n";
  os << "kappa(p) = " << res.value("kappa_p_exact", std::string{})
     << ", s_p = " << res.value("s_p_exact", std::string{}) << "\n";
  os << "E0 = " << res.value("E0", 0.0) << ", I0 = " << res.value("I0", 0.0) << "\n";
  os << "energy drift (rel) = " << res.value("energy_drift_rel", 0.0) << "\n";
  os << "I max step increase = " << res.value("I_max_step_increase", 0.0)
     << ", I_max/I0 = " << res.value("I_max_over_I0", 0.0) << "\n";
  os << "pointwise decay ratio sup = " << res.value("ratio_L51_max", 0.0) << "\n";
  if (res.contains("decay_slope"))
    os << "decay fit: slope = " << res["decay_slope"].get<double>()
       << ", max M(R) R^kappa / I0 = " << res["decay_constant_max"].get<double>() << "\n";
  os << "l2p2 total = " << res.value("l2p2_total", 0.0)
     << ", last-half fraction = " << res.value("l2p2_last_half_fraction", 0.0) << "\n";
  if (res.contains("morawetz"))
    for (const auto& row : res["morawetz"])
      os << "  R = " << row["R"].get<double>() << ": sum/E = "
         << (res.value("E0", 0.0) > 0 ? row["sum"].get<double>() / res["E0"].get<double>() : 0.0)
         << ", residual = " << row["residual_32"].get<double>()
         << (row["inequality_ok"].get<bool>() ? "" : "  [VIOLATION]")
         << (row["key_ok"].get<bool>() ? "" : "  [KEY VIOLATION]") << "\n";
  if (res.contains("scatter")) {
    os << "scatter deltas:";
    for (const auto& d : res["scatter"]["consecutive_deltas"]) os << " " << d.get<double>();
    os << "\n";
  }
  return os.str();
}

ConvergenceStudy convergence_study(const RunConfig& cfg, int levels) {
  if (levels < 3) fail_config("convergence_study: need levels >= 3");
  ConvergenceStudy st;
  std::vector<RunOutputs> outs;
  std::vector<RadialState> finals;
  std::vector<Grid> grids;
  for (int l = 0; l < levels; ++l) {
    RunConfig c = cfg;
    c.n = (cfg.n - 1) * (Index{1} << l) + 1;
    RunOutputs o = run_core(c);
    const Grid g = make_grid(c.r_max, c.n);
    st.ns.push_back(c.n);
    st.drs.push_back(g.dr);
    st.drifts.push_back(o.energy_drift_rel);
    st.i0s.push_back(o.I0);
    st.e0s.push_back(o.e0);
    st.morawetz.push_back(o.morawetz);
    finals.push_back(o.final_forward);
    grids.push_back(g);
    outs.push_back(std::move(o));
  }

  // Oracle error: against the exact propagator when linear, against the next
  // finer level restricted to common nodes when nonlinear.
  st.oracle_is_self = cfg.nonlinearity;
  if (!cfg.nonlinearity) {
    for (int l = 0; l < levels; ++l) {
      const RadialState s0 = sample_data(cfg.family, grids[l], cfg.params);
      const RadialState exact = free_evolve(s0, grids[l], cfg.T);
      st.oracle_errors.push_back((finals[l].w - exact.w).abs().maxCoeff());
    }
  } else if (cfg.T > 0.0) {
    for (int l = 0; l + 1 < levels; ++l) {
      double err = 0.0;
      for (Index j = 0; j < st.ns[l]; ++j)
        err = std::max(err, std::abs(finals[l].w[j] - finals[l + 1].w[2 * j]));
      st.oracle_errors.push_back(err);
    }
  }

  const double noise_floor = 1e-12;
  const auto error_slopes = [&](const std::string& name, const std::vector<double>& e) {
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      if (e[i] <= 0.0 || e[i + 1] <= 0.0) {
        st.flags.push_back(name + ": zero error, slope skipped");
        continue;
      }
      st.slopes.emplace_back(name + "_" + std::to_string(i), std::log2(e[i] / e[i + 1]));
    }
  };
  const auto value_slope = [&](const std::string& name, const std::vector<double>& x) {
    std::vector<double> d;
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      d.push_back(std::abs(x[i] - x[i + 1]));
      scale = std::max({scale, std::abs(x[i]), std::abs(x[i + 1])});
    }
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i] <= noise_floor * std::max(scale, 1.0) ||
          d[i + 1] <= noise_floor * std::max(scale, 1.0)) {
        st.flags.push_back(name + ": differences at round-off, slope skipped");
        continue;
      }
      if (d[i + 1] > d[i]) st.flags.push_back(name + ": non-monotone difference sequence");
      st.slopes.emplace_back(name + "_" + std::to_string(i), std::log2(d[i] / d[i + 1]));
    }
  };

  if (cfg.T > 0.0) error_slopes("energy_drift", st.drifts);
  if (!st.oracle_errors.empty()) error_slopes("oracle_error", st.oracle_errors);
  value_slope("I0", st.i0s);
  {
    std::vector<double> grad, total;
    for (const auto& e : st.e0s) {
      grad.push_back(e.gradient);
      total.push_back(e.total);
    }
    value_slope("E0_grad", grad);
    value_slope("E0_total", total);
  }
  if (cfg.T > 0.0) {
    for (std::size_t ri = 0; ri < cfg.radii.size(); ++ri) {
      const std::string tag = "morawetz_R" + fmt_short(cfg.radii[ri]) + "_";
      std::vector<double> a, b, c, d;
      for (int l = 0; l < levels; ++l) {
        a.push_back(st.morawetz[l][ri].terms.interior_energy_avg);
        b.push_back(st.morawetz[l][ri].terms.sphere_trace);
        c.push_back(st.morawetz[l][ri].terms.interior_potential);
        d.push_back(st.morawetz[l][ri].terms.exterior_morawetz);
      }
      value_slope(tag + "interior_energy_avg", a);
      value_slope(tag + "sphere_trace", b);
      value_slope(tag + "interior_potential", c);
      value_slope(tag + "exterior_morawetz", d);
    }
  }
  return st;
}

void write_convergence_files(const ConvergenceStudy& st, const RunConfig& cfg,
                             const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream f(out_dir + "/convergence.txt");
  if (!f) fail_io("cannot write " + out_dir + "/convergence.txt");
  f << "# levels: n, dr, energy_drift, oracle_error, I0, E0_total\n";
  for (std::size_t l = 0; l < st.ns.size(); ++l) {
    f << st.ns[l] << "\t" << fmt(st.drs[l]) << "\t" << fmt(st.drifts[l]) << "\t"
      << (l < st.oracle_errors.size() ? fmt(st.oracle_errors[l]) : "-") << "\t"
      << fmt(st.i0s[l]) << "\t" << fmt(st.e0s[l].total) << "\n";
  }
  f << "# slopes\n";
  for (const auto& [k, v] : st.slopes) f << k << " = " << fmt(v) << "\n";
  for (const auto& flag : st.flags) f << "# flag: " << flag << "\n";

  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = to_flat_map(cfg);
  j["levels"] = st.ns;
  j["drs"] = st.drs;
  j["energy_drift"] = st.drifts;
  j["oracle_errors"] = st.oracle_errors;
  j["oracle_is_self"] = st.oracle_is_self;
  j["I0"] = st.i0s;
  json slopes = json::object();
  for (const auto& [k, v] : st.slopes) slopes[k] = v;
  j["slopes"] = slopes;
  j["flags"] = st.flags;
  std::ofstream jf(out_dir + "/convergence.json");
  if (!jf) fail_io("cannot write " + out_dir + "/convergence.json");
  jf << j.dump(2) << "\n";
}

SweepResult sweep(const SweepConfig& sw) {
  // Cartesian product of the axes.
  std::vector<std::vector<std::pair<std::string, std::string>>> combos{{}};
  for (const auto& [key, values] : sw.axes) {
    std::vector<std::vector<std::pair<std::string, std::string>>> next;
    for (const auto& combo : combos)
      for (const auto& v : values) {
        auto c = combo;
        c.emplace_back(key, v);
        next.push_back(std::move(c));
      }
    combos = std::move(next);
  }

  std::vector<std::future<SweepRow>> futures;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&sw, &combos, i]() {
      SweepRow row;
      row.axis_values = combos[i];
      RunConfig c = sw.base;
      char sub[32];
      std::snprintf(sub, sizeof(sub), "run_%03zu", i);
      c.out_dir = sw.base.out_dir + "/" + sub;
      row.out_dir = c.out_dir;
      try {
        for (const auto& [k, v] : combos[i]) apply_override(c, k, v);
        const RunOutputs out = run_experiment(c);
        const Rational pr = rationalize(c.params.p);
        row.kappa_p_exact = kappa_critical_exact(pr).str();
        row.s_p_exact = s_critical_exact(pr).str();
        row.kappa_p = kappa_critical(c.params.p);
        row.s_p = c.params.s_critical();
        row.E0 = out.e0.total;
        row.I0 = out.I0;
        row.l2p2_total = out.l2p2.total;
        if (out.fit) {
          row.decay_slope = out.fit->slope;
          row.has_fit = true;
        }
        row.status = "ok";
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
      return row;
    }));
  }

  SweepResult result;
  for (auto& fu : futures) result.rows.push_back(fu.get());

  std::filesystem::create_directories(sw.base.out_dir);
  std::ofstream f(sw.base.out_dir + "/sweep_report.txt");
  if (!f) fail_io("cannot write " + sw.base.out_dir + "/sweep_report.txt");
  f << "# axes";
  for (const auto& [k, _] : sw.axes) f << " " << k;
  f << " | kappa_p s_p E0 I0 l2p2_total decay_slope status\n";
  json rows_json = json::array();
  for (const SweepRow& row : result.rows) {
    for (const auto& [k, v] : row.axis_values) f << k << "=" << v << "\t";
    f << "kappa_p=" << row.kappa_p_exact << "\t" << "s_p=" << row.s_p_exact << "\t"
      << "E0=" << fmt(row.E0) << "\t" << "I0=" << fmt(row.I0) << "\t"
      << "l2p2=" << fmt(row.l2p2_total) << "\t"
      << "decay_slope=" << (row.has_fit ? fmt(row.decay_slope) : "-") << "\t" << row.status
      << "\n";
    json r;
    json axes = json::object();
    for (const auto& [k, v] : row.axis_values) axes[k] = v;
    r["axes"] = axes;
    r["out_dir"] = row.out_dir;
    r["status"] = row.status;
    r["kappa_p_exact"] = row.kappa_p_exact;
    r["s_p_exact"] = row.s_p_exact;
    r["kappa_p"] = row.kappa_p;
    r["s_p"] = row.s_p;
    r["E0"] = row.E0;
    r["I0"] = row.I0;
    r["l2p2_total"] = row.l2p2_total;
    if (row.has_fit) r["decay_slope"] = row.decay_slope;
    rows_json.push_back(r);
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["rows"] = rows_json;
  std::ofstream jf(sw.base.out_dir + "/sweep_manifest.json");
  if (!jf) fail_io("cannot write " + sw.base.out_dir + "/sweep_manifest.json");
  jf << j.dump(2) << "\n";
  return result;
}

}  // namespace rwave
