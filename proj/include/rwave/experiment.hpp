// Experiment orchestration: execute forward/backward evolutions with the
// ledger and functional observers attached, produce the time series, the
// end-of-run report, and a reproducible manifest; convergence studies and
// parameter sweeps sit on top.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rwave/config.hpp"
#include "rwave/functionals.hpp"
#include "rwave/ledger.hpp"
#include "rwave/types.hpp"

namespace rwave {

struct SeriesRow {
  double t = 0.0;
  EnergySplit e;
  double I_t = 0.0;
  double ratio = 0.0;  // pointwise decay ratio
  ChargePair q;
  std::vector<double> ext_e;  // exterior energy at each tracked radius
  double pot_int = 0.0;       // int |u|^(p+1) dx (kept internal for the charge law)
};

struct RunOutputs {
  RunConfig cfg;

  // t = 0 functionals and truncation report.
  EnergySplit e0;
  double I0 = 0.0;
  ChargePair q_init;
  double discarded_tail_weighted = 0.0;
  double discarded_tail_energy = 0.0;

  std::vector<SeriesRow> rows;  // ascending in t; backward rows carry t < 0

  bool has_ledger = false;
  Ledger merged;
  std::vector<MorawetzRow> morawetz;
  std::optional<DecayFit> fit;
  std::string fit_error;
  L2p2Report l2p2;
  std::optional<ScatterRecord> scatter;

  // Monitors.
  double energy_drift_rel = 0.0;          // max |E(t)-E(0)|/E(0)
  double i_max_step_increase = 0.0;       // max over steps of I(t_{n+1}) - I(t_n)
  double i_max = 0.0;                     // max I(t) along both runs
  double ratio_max = 0.0;                 // sup of the pointwise decay ratio
  double q_law_max_resid = 0.0;           // conformal-law residual, relative
  bool q_law_checked = false;
  double q_max_increase = 0.0;            // max forward increase of Q (expect <= 0)

  RadialState final_forward;
  long steps_forward = 0;
  long steps_backward = 0;
  std::vector<std::string> warnings;
};

// Validate and run, keeping everything in memory.
RunOutputs run_core(const RunConfig& cfg);

// run_core plus series.tsv / report.txt / manifest.json under cfg.out_dir.
RunOutputs run_experiment(const RunConfig& cfg);

// Render the stored manifest of a finished run directory as a short table.
std::string format_report(const std::string& out_dir);

struct ConvergenceStudy {
  std::vector<Index> ns;
  std::vector<double> drs;
  std::vector<double> drifts;
  std::vector<double> oracle_errors;  // vs d'Alembert (linear) or next level (nonlinear)
  bool oracle_is_self = false;
  std::vector<double> i0s;
  std::vector<EnergySplit> e0s;
  std::vector<std::vector<MorawetzRow>> morawetz;  // per level
  std::vector<std::pair<std::string, double>> slopes;  // NaN where at round-off
  std::vector<std::string> flags;
};

ConvergenceStudy convergence_study(const RunConfig& cfg, int levels);
void write_convergence_files(const ConvergenceStudy& st, const RunConfig& cfg,
                             const std::string& out_dir);

struct SweepRow {
  std::vector<std::pair<std::string, std::string>> axis_values;
  std::string out_dir;
  std::string status;  // "ok" or the error message
  std::string kappa_p_exact, s_p_exact;
  double kappa_p = 0.0, s_p = 0.0;
  double E0 = 0.0, I0 = 0.0, l2p2_total = 0.0;
  double decay_slope = 0.0;
  bool has_fit = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Runs the cartesian product of the sweep axes concurrently; per-run errors
// are isolated and marked in the combined report.
SweepResult sweep(const SweepConfig& sw);

}  // namespace rwave
