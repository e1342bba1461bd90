// Run configuration: a flat key = value schema resolved from, in order,
// built-in defaults, a named preset, a config file, and repeatable
// --override KEY=VALUE flags.  The resolved configuration is echoed into the
// run manifest so any run can be reproduced from its output alone.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwave/data_families.hpp"
#include "rwave/params.hpp"
#include "rwave/types.hpp"

namespace rwave {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string preset;

  ModelParams params;

  double r_max = 40.0;
  Index n = 4001;

  double cfl_lambda = 0.5;
  double T = 20.0;
  bool nonlinearity = true;
  bool allow_boundary_touch = false;
  bool run_backward = true;

  DataFamily family{FamilyKind::GaussianBump, 1.0, 1.0, 0.0};

  std::vector<double> radii = {1.0, 2.0, 4.0, 8.0, 16.0};
  long cadence = 10;  // steps between time-series/functional samples
  std::vector<double> snapshot_times;
  double fit_r_min = 2.0;   // decay-fit window
  double fit_r_max = 16.0;
  double qlaw_t_min = 1.0;  // conformal-law check window
  double qlaw_t_max = 10.0;

  std::string out_dir = "out";
};

// Presets: morawetz, decay, scatter, conformal, linear-oracle, convergence.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

// Parse a flat key = value file ('#' comments).  Returns key/value pairs in
// file order; unknown keys are rejected when applied.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

// Resolve defaults <- preset <- file <- overrides.  `preset_flag` (from the
// command line) wins over a `preset` key in the file.
RunConfig resolve_config(const std::optional<std::string>& path,
                         const std::optional<std::string>& preset_flag,
                         const std::vector<std::string>& overrides,
                         const std::optional<std::string>& out_dir);

// Reject every module-level precondition violation before any compute.
void validate(const RunConfig& cfg);

// Resolved flat view (echoed into manifests; keys sorted).
std::map<std::string, std::string> to_flat_map(const RunConfig& cfg);

// Sweep description: a base config plus one or more axes `sweep.KEY`, each a
// comma list of values; the run set is the cartesian product.
struct SweepConfig {
  RunConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
};

SweepConfig resolve_sweep(const std::string& path,
                          const std::optional<std::string>& preset_flag,
                          const std::vector<std::string>& overrides,
                          const std::optional<std::string>& out_dir);

}  // namespace rwave
