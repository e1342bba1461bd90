#include "rwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rwave/grid.hpp"
#include "rwave/stepper.hpp"

namespace rwave {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail_config("config: key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail_config("config: key '" + key + "': cannot parse '" + v + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  fail_config("config: key '" + key + "': cannot parse '" + v + "' as a boolean");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  return out;
}

std::string fmt_list(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  return os.str();
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"morawetz", "decay", "scatter", "conformal", "linear-oracle", "convergence"};
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "morawetz") {
    // Defaults already describe the baseline Gaussian run to T = 20.
  } else if (name == "decay") {
    c.family = {FamilyKind::PowerTail, 1.0, 1.0, 2.2};
    c.allow_boundary_touch = true;  // tail data reach the truncation radius
  } else if (name == "scatter") {
    c.T = 40.0;
    c.snapshot_times = {2.0, 4.0, 8.0, 16.0};
    c.allow_boundary_touch = true;  // Gaussian tail plus T = 40 grazes r_max
  } else if (name == "conformal") {
    c.T = 12.0;
  } else if (name == "linear-oracle") {
    c.nonlinearity = false;
    c.family = {FamilyKind::CompactBump, 1.0, 2.0, 0.0};
    c.T = 5.0;
    c.n = 1001;
  } else if (name == "convergence") {
    c.family = {FamilyKind::CompactBump, 1.0, 2.0, 0.0};
    c.T = 5.0;
    c.r_max = 20.0;
    c.n = 1001;
    c.radii = {1.0, 2.0, 4.0, 8.0};
  } else {
    fail_config("unknown preset '" + name + "'");
  }
  return c;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "preset") {
    cfg = preset_config(v);
  } else if (key == "p") {
    cfg.params.p = parse_double(key, v);
  } else if (key == "kappa") {
    cfg.params.kappa = parse_double(key, v);
  } else if (key == "weight_kind") {
    if (v == "pow_r") cfg.params.weight_kind = WeightKind::PowR;
    else if (v == "pow_one_plus_r") cfg.params.weight_kind = WeightKind::PowOnePlusR;
    else fail_config("config: weight_kind must be pow_r or pow_one_plus_r, got '" + v + "'");
  } else if (key == "r_max") {
    cfg.r_max = parse_double(key, v);
  } else if (key == "n") {
    cfg.n = parse_long(key, v);
  } else if (key == "lambda") {
    cfg.cfl_lambda = parse_double(key, v);
  } else if (key == "T") {
    cfg.T = parse_double(key, v);
  } else if (key == "nonlinearity") {
    cfg.nonlinearity = parse_bool(key, v);
  } else if (key == "allow_boundary_touch") {
    cfg.allow_boundary_touch = parse_bool(key, v);
  } else if (key == "run_backward") {
    cfg.run_backward = parse_bool(key, v);
  } else if (key == "family") {
    cfg.family.kind = family_from_string(v);
  } else if (key == "amplitude") {
    cfg.family.amplitude = parse_double(key, v);
  } else if (key == "scale") {
    cfg.family.scale = parse_double(key, v);
  } else if (key == "gamma") {
    cfg.family.gamma = parse_double(key, v);
  } else if (key == "radii") {
    cfg.radii = parse_list(key, v);
  } else if (key == "cadence") {
    cfg.cadence = parse_long(key, v);
  } else if (key == "snapshot_times") {
    cfg.snapshot_times = parse_list(key, v);
  } else if (key == "fit_r_min") {
    cfg.fit_r_min = parse_double(key, v);
  } else if (key == "fit_r_max") {
    cfg.fit_r_max = parse_double(key, v);
  } else if (key == "qlaw_t_min") {
    cfg.qlaw_t_min = parse_double(key, v);
  } else if (key == "qlaw_t_max") {
    cfg.qlaw_t_max = parse_double(key, v);
  } else if (key == "out") {
    cfg.out_dir = v;
  } else {
    fail_config("config: unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_io("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail_config("config file " + path + ":" + std::to_string(lineno) +
                  ": expected 'key = value'");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

namespace {

RunConfig resolve_base(const std::optional<std::string>& path,
                       const std::optional<std::string>& preset_flag,
                       const std::vector<std::string>& overrides,
                       const std::optional<std::string>& out_dir,
                       std::vector<std::pair<std::string, std::string>>* sweep_keys) {
  std::vector<std::pair<std::string, std::string>> file_kv;
  if (path) file_kv = parse_config_file(*path);

  RunConfig cfg;
  // Preset layer: command-line flag wins over the file's preset key.
  if (preset_flag) {
    cfg = preset_config(*preset_flag);
  } else {
    for (const auto& [k, v] : file_kv)
      if (k == "preset") cfg = preset_config(v);
  }
  for (const auto& [k, v] : file_kv) {
    if (k == "preset") continue;
    if (k.rfind("sweep.", 0) == 0) {
      if (!sweep_keys) fail_config("config: sweep.* keys are only valid for the sweep command");
      sweep_keys->emplace_back(k.substr(6), v);
      continue;
    }
    apply_override(cfg, k, v);
  }
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) fail_config("override '" + ov + "': expected KEY=VALUE");
    apply_override(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  if (out_dir) cfg.out_dir = *out_dir;
  return cfg;
}

}  // namespace

RunConfig resolve_config(const std::optional<std::string>& path,
                         const std::optional<std::string>& preset_flag,
                         const std::vector<std::string>& overrides,
                         const std::optional<std::string>& out_dir) {
  return resolve_base(path, preset_flag, overrides, out_dir, nullptr);
}

SweepConfig resolve_sweep(const std::string& path,
                          const std::optional<std::string>& preset_flag,
                          const std::vector<std::string>& overrides,
                          const std::optional<std::string>& out_dir) {
  SweepConfig sw;
  std::vector<std::pair<std::string, std::string>> axes_raw;
  sw.base = resolve_base(path, preset_flag, overrides, out_dir, &axes_raw);
  for (const auto& [key, joined] : axes_raw) {
    std::vector<std::string> vals;
    std::stringstream ss(joined);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) vals.push_back(item);
    }
    if (vals.empty()) fail_config("sweep: empty axis 'sweep." + key + "'");
    sw.axes.emplace_back(key, vals);
  }
  if (sw.axes.empty()) fail_config("sweep: no sweep.* axis found in '" + path + "'");
  return sw;
}

void validate(const RunConfig& cfg) {
  validate(cfg.params);
  if (!(cfg.n >= 16)) fail_config("config: need n >= 16");
  if (!std::isfinite(cfg.r_max) || !(cfg.r_max > 0.0)) fail_config("config: need r_max > 0");
  if (!(cfg.cfl_lambda > 0.0) || cfg.cfl_lambda > 1.0)
    fail_config("config: need 0 < lambda <= 1 (CFL)");
  if (!std::isfinite(cfg.T) || cfg.T < 0.0) fail_config("config: need T >= 0");
  if (cfg.cadence < 1) fail_config("config: need cadence >= 1");
  check_admissible(cfg.family, cfg.params);
  for (double R : cfg.radii)
    if (!(R > 0.0) || !(R < cfg.r_max))
      fail_config("config: tracked radius " + std::to_string(R) + " outside (0, r_max)");
  for (double ts : cfg.snapshot_times)
    if (!(ts > 0.0) || ts > cfg.T)
      fail_config("config: snapshot time " + std::to_string(ts) + " outside (0, T]");
  // Boundary-reach precondition, checked before any compute.
  const Grid g = make_grid(cfg.r_max, cfg.n);
  const RadialState s0 = sample_data(cfg.family, g, cfg.params);
  const double a = support_radius(s0, g);
  if (a + cfg.T > cfg.r_max && !cfg.allow_boundary_touch)
    fail_config("config: support bound a + T = " + std::to_string(a + cfg.T) +
                " exceeds r_max = " + std::to_string(cfg.r_max) +
                "; enlarge the grid or set allow_boundary_touch = true");
}

std::map<std::string, std::string> to_flat_map(const RunConfig& cfg) {
  std::map<std::string, std::string> m;
  const auto num = [](double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  };
  m["preset"] = cfg.preset;
  m["p"] = num(cfg.params.p);
  m["kappa"] = num(cfg.params.kappa);
  m["weight_kind"] = to_string(cfg.params.weight_kind);
  m["r_max"] = num(cfg.r_max);
  m["n"] = std::to_string(cfg.n);
  m["lambda"] = num(cfg.cfl_lambda);
  m["T"] = num(cfg.T);
  m["nonlinearity"] = cfg.nonlinearity ? "on" : "off";
  m["allow_boundary_touch"] = cfg.allow_boundary_touch ? "true" : "false";
  m["run_backward"] = cfg.run_backward ? "true" : "false";
  m["family"] = to_string(cfg.family.kind);
  m["amplitude"] = num(cfg.family.amplitude);
  m["scale"] = num(cfg.family.scale);
  m["gamma"] = num(cfg.family.gamma);
  m["radii"] = fmt_list(cfg.radii);
  m["cadence"] = std::to_string(cfg.cadence);
  m["snapshot_times"] = fmt_list(cfg.snapshot_times);
  m["fit_r_min"] = num(cfg.fit_r_min);
  m["fit_r_max"] = num(cfg.fit_r_max);
  m["qlaw_t_min"] = num(cfg.qlaw_t_min);
  m["qlaw_t_max"] = num(cfg.qlaw_t_max);
  m["out"] = cfg.out_dir;
  return m;
}

}  // namespace rwave
