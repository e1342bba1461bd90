// Command-line driver: run single experiments, parameter sweeps, and
// convergence studies; re-print the report of a finished run directory.
//
// Exit codes: 0 success, 1 usage, 2 configuration/validation error,
// 3 compute error, 4 I/O error.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rwave/experiment.hpp"

namespace {

int exit_code(rwave::ErrorKind k) {
  switch (k) {
    case rwave::ErrorKind::Config: return 2;
    case rwave::ErrorKind::Compute: return 3;
    case rwave::ErrorKind::Io: return 4;
  }
  return 3;
}

std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rwave: radial defocusing wave-equation laboratory"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir;
  std::vector<std::string> overrides;
  int levels = 3;

  auto add_common = [&](CLI::App* sub, bool with_levels) {
    sub->add_option("--config", config_path, "flat key = value config file");
    sub->add_option("--preset", preset,
                    "preset name (morawetz, decay, scatter, conformal, linear-oracle, "
                    "convergence)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--override", overrides, "KEY=VALUE, repeatable, applied last")
        ->take_all();
    if (with_levels) sub->add_option("--levels", levels, "refinement levels (>= 3)");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run one experiment");
  add_common(cmd_run, false);
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the sweep axes of a config file");
  add_common(cmd_sweep, false);
  CLI::App* cmd_conv = app.add_subcommand("convergence", "Richardson refinement study");
  add_common(cmd_conv, true);
  CLI::App* cmd_report = app.add_subcommand("report", "print the report of a run directory");
  cmd_report->add_option("--out", out_dir, "run directory holding manifest.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      const rwave::RunConfig cfg =
          rwave::resolve_config(opt(config_path), opt(preset), overrides, opt(out_dir));
      const rwave::RunOutputs out = rwave::run_experiment(cfg);
      std::cout << rwave::format_report(cfg.out_dir);
      for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    } else if (cmd_sweep->parsed()) {
      if (config_path.empty()) {
        std::cerr << "sweep: --config with sweep.* axes is required\n";
        return 1;
      }
      const rwave::SweepConfig sw =
          rwave::resolve_sweep(config_path, opt(preset), overrides, opt(out_dir));
      const rwave::SweepResult res = rwave::sweep(sw);
      int failed = 0;
      for (const auto& row : res.rows) {
        if (row.status != "ok") {
          ++failed;
          std::cerr << row.out_dir << ": " << row.status << "\n";
        }
      }
      std::cout << "sweep: " << res.rows.size() - failed << "/" << res.rows.size()
                << " runs ok; report under " << sw.base.out_dir << "\n";
    } else if (cmd_conv->parsed()) {
      rwave::RunConfig cfg =
          rwave::resolve_config(opt(config_path), opt(preset), overrides, opt(out_dir));
      if (cfg.preset.empty() && config_path.empty()) cfg = rwave::preset_config("convergence");
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const rwave::ConvergenceStudy st = rwave::convergence_study(cfg, levels);
      rwave::write_convergence_files(st, cfg, cfg.out_dir);
      for (const auto& [k, v] : st.slopes) std::cout << k << " = " << v << "\n";
      for (const auto& flag : st.flags) std::cerr << "flag: " << flag << "\n";
    } else if (cmd_report->parsed()) {
      std::cout << rwave::format_report(out_dir);
    }
  } catch (const rwave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
