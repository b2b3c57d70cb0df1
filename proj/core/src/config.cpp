#include "layerwave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "layerwave/csv.hpp"
#include "layerwave/error.hpp"

namespace layerwave {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

template <class T>
T field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path + "." + key, "required field is missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(path + "." + key, std::string("wrong type: ") + e.what());
  }
}

template <class T>
T field_or(const json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, key, path);
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> known) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [k, _] : j.items()) {
    if (!allowed.count(k)) fail(path + "." + k, "unknown field");
  }
}

std::pair<double, double> range(const json& j, const std::string& key,
                                const std::string& path) {
  const auto v = field<std::vector<double>>(j, key, path);
  if (v.size() != 2 || !(v[1] > v[0])) {
    fail(path + "." + key, "expected [lo, hi] with hi > lo");
  }
  return {v[0], v[1]};
}

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double InitialConfig::operator()(double x, double y) const {
  if (type == Type::gaussian1d) {
    const double s = axis == 'x' ? x - center_x : y - center_y;
    return amplitude * std::exp(-s * s / (2.0 * sigma2));
  }
  const double dx = x - center_x, dy = y - center_y;
  return amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma2));
}

Medium parse_medium(const json& j, const std::filesystem::path& base_dir) {
  const std::string path = "medium";
  const auto kind = field<std::string>(j, "kind", path);
  try {
    if (kind == "piecewise") {
      reject_unknown(j, path, {"kind", "K_A", "K_B", "rho_A", "rho_B"});
      return Medium::piecewise(field<double>(j, "K_A", path), field<double>(j, "K_B", path),
                               field<double>(j, "rho_A", path),
                               field<double>(j, "rho_B", path));
    }
    if (kind == "sinusoidal") {
      reject_unknown(j, path, {"kind", "K_A", "K_B"});
      return Medium::sinusoidal(field<double>(j, "K_A", path), field<double>(j, "K_B", path));
    }
    if (kind == "tabulated") {
      reject_unknown(j, path, {"kind", "table"});
      std::filesystem::path table = field<std::string>(j, "table", path);
      if (table.is_relative() && !base_dir.empty()) table = base_dir / table;
      if (!std::filesystem::exists(table)) {
        fail(path + ".table", "file does not exist: " + table.string());
      }
      const auto t = read_csv(table);
      if (t.columns.size() != 2) fail(path + ".table", "expected two columns K,rho");
      return Medium::tabulated(t.columns[0], t.columns[1]);
    }
  } catch (const InvalidParameter& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "expected piecewise, sinusoidal or tabulated, got '" + kind + "'");
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, "config",
                 {"name", "medium", "initial", "domain", "eff", "fv", "dispersion",
                  "comparison", "t_end", "outputs"});
  ExperimentConfig c;
  c.name = field_or<std::string>(j, "name", "config", "experiment");
  c.medium_json = field<json>(j, "medium", "config");
  c.medium = parse_medium(c.medium_json, base_dir);
  c.t_end = field<double>(j, "t_end", "config");
  if (!(c.t_end > 0)) fail("config.t_end", "must be positive");

  const json ji = field<json>(j, "initial", "config");
  reject_unknown(ji, "initial",
                 {"type", "amplitude", "center", "sigma", "sigma2", "axis"});
  const auto type = field<std::string>(ji, "type", "initial");
  if (type == "gaussian2d") {
    c.initial.type = InitialConfig::Type::gaussian2d;
  } else if (type == "gaussian1d") {
    c.initial.type = InitialConfig::Type::gaussian1d;
  } else {
    fail("initial.type", "expected gaussian2d or gaussian1d, got '" + type + "'");
  }
  c.initial.amplitude = field_or<double>(ji, "amplitude", "initial", 1.0);
  if (ji.contains("sigma") == ji.contains("sigma2")) {
    fail("initial", "give exactly one of sigma or sigma2");
  }
  c.initial.sigma2 = ji.contains("sigma")
                         ? std::pow(field<double>(ji, "sigma", "initial"), 2)
                         : field<double>(ji, "sigma2", "initial");
  if (!(c.initial.sigma2 > 0)) fail("initial.sigma", "must be positive");
  if (c.initial.type == InitialConfig::Type::gaussian2d) {
    const auto ctr = field_or<std::vector<double>>(ji, "center", "initial", {0.0, 0.0});
    if (ctr.size() != 2) fail("initial.center", "expected [x, y]");
    c.initial.center_x = ctr[0];
    c.initial.center_y = ctr[1];
  } else {
    const auto ax = field_or<std::string>(ji, "axis", "initial", "x");
    if (ax != "x" && ax != "y") fail("initial.axis", "expected x or y");
    c.initial.axis = ax[0];
    const double ctr = ji.contains("center") ? field<double>(ji, "center", "initial") : 0.0;
    (ax == "x" ? c.initial.center_x : c.initial.center_y) = ctr;
  }

  const json jd = field<json>(j, "domain", "config");
  reject_unknown(jd, "domain", {"x", "y"});
  std::tie(c.domain.x0, c.domain.x1) = range(jd, "x", "domain");
  std::tie(c.domain.y0, c.domain.y1) = range(jd, "y", "domain");

  if (j.contains("eff")) {
    const json& je = j.at("eff");
    reject_unknown(je, "eff", {"system", "orders", "nx", "ny", "safety", "cutoff"});
    c.eff.enabled = true;
    try {
      c.eff.system = parse_system(field_or<std::string>(je, "system", "eff", "2d"));
    } catch (const InvalidParameter& e) {
      fail("eff.system", e.what());
    }
    c.eff.orders = field_or<std::vector<int>>(je, "orders", "eff", {0});
    c.eff.nx = field_or<std::size_t>(je, "nx", "eff", 64);
    c.eff.ny = field_or<std::size_t>(je, "ny", "eff", 64);
    if (c.eff.system == SystemKind::transverse1d) c.eff.ny = 1;
    if (c.eff.system == SystemKind::normal1d) c.eff.nx = 1;
    c.eff.safety = field_or<double>(je, "safety", "eff", 0.5);
    c.eff.cutoff = field_or<double>(je, "cutoff", "eff", kWavenumberCutoff);
  }
  if (j.contains("fv")) {
    const json& jf = j.at("fv");
    reject_unknown(jf, "fv", {"cells_per_period", "nx", "cfl", "limiter"});
    c.fv.enabled = true;
    c.fv.cells_per_period = field_or<int>(jf, "cells_per_period", "fv", 32);
    c.fv.nx = field_or<std::size_t>(jf, "nx", "fv", 0);
    c.fv.cfl = field_or<double>(jf, "cfl", "fv", 0.9);
    try {
      c.fv.limiter = parse_limiter(field_or<std::string>(jf, "limiter", "fv", "mc"));
    } catch (const InvalidParameter& e) {
      fail("fv.limiter", e.what());
    }
  }
  if (j.contains("dispersion")) {
    const json& jp = j.at("dispersion");
    reject_unknown(jp, "dispersion", {"order", "k", "theta", "polar"});
    c.dispersion.enabled = true;
    c.dispersion.order = field_or<int>(jp, "order", "dispersion", 4);
    c.dispersion.k = field_or<std::vector<double>>(jp, "k", "dispersion", {});
    c.dispersion.theta = field_or<std::vector<double>>(jp, "theta", "dispersion", {});
    c.dispersion.polar = field_or<bool>(jp, "polar", "dispersion", true);
  }
  const auto cmp = field_or<std::string>(j, "comparison", "config", "none");
  if (cmp == "none") {
    c.comparison = ComparisonKind::none;
  } else if (cmp == "profile") {
    c.comparison = ComparisonKind::profile;
  } else if (cmp == "fronts") {
    c.comparison = ComparisonKind::fronts;
  } else {
    fail("config.comparison", "expected none, profile or fronts");
  }
  if (j.contains("outputs")) {
    const json& jo = j.at("outputs");
    reject_unknown(jo, "outputs",
                   {"directory", "times", "slices", "snapshots", "profiles", "fastvars"});
    c.outputs.directory = field_or<std::string>(jo, "directory", "outputs", "");
    c.outputs.times = field_or<std::vector<double>>(jo, "times", "outputs", {});
    c.outputs.slices = field_or<std::vector<std::string>>(jo, "slices", "outputs", {});
    c.outputs.snapshots = field_or<bool>(jo, "snapshots", "outputs", true);
    c.outputs.profiles = field_or<bool>(jo, "profiles", "outputs", true);
    c.outputs.fastvars = field_or<bool>(jo, "fastvars", "outputs", true);
  }
  if (c.outputs.directory.empty()) c.outputs.directory = c.name;
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["medium"] = c.medium_json;
  j["t_end"] = c.t_end;
  json ji;
  if (c.initial.type == InitialConfig::Type::gaussian2d) {
    ji["type"] = "gaussian2d";
    ji["center"] = {c.initial.center_x, c.initial.center_y};
  } else {
    ji["type"] = "gaussian1d";
    ji["axis"] = std::string(1, c.initial.axis);
    ji["center"] = c.initial.axis == 'x' ? c.initial.center_x : c.initial.center_y;
  }
  ji["amplitude"] = c.initial.amplitude;
  ji["sigma2"] = c.initial.sigma2;
  j["initial"] = ji;
  j["domain"] = {{"x", {c.domain.x0, c.domain.x1}}, {"y", {c.domain.y0, c.domain.y1}}};
  if (c.eff.enabled) {
    j["eff"] = {{"system", std::string(name(c.eff.system))},
                {"orders", c.eff.orders},
                {"nx", c.eff.nx},
                {"ny", c.eff.ny},
                {"safety", c.eff.safety},
                {"cutoff", c.eff.cutoff}};
  }
  if (c.fv.enabled) {
    j["fv"] = {{"cells_per_period", c.fv.cells_per_period},
               {"nx", c.fv.nx},
               {"cfl", c.fv.cfl},
               {"limiter", std::string(name(c.fv.limiter))}};
  }
  if (c.dispersion.enabled) {
    j["dispersion"] = {{"order", c.dispersion.order},
                       {"k", c.dispersion.k},
                       {"theta", c.dispersion.theta},
                       {"polar", c.dispersion.polar}};
  }
  j["comparison"] = c.comparison == ComparisonKind::profile  ? "profile"
                    : c.comparison == ComparisonKind::fronts ? "fronts"
                                                             : "none";
  j["outputs"] = {{"directory", c.outputs.directory}, {"times", c.outputs.times},
                  {"slices", c.outputs.slices},       {"snapshots", c.outputs.snapshots},
                  {"profiles", c.outputs.profiles},   {"fastvars", c.outputs.fastvars}};
  return j;
}

void validate(const ExperimentConfig& c) {
  if (c.eff.enabled) {
    if (c.eff.orders.empty()) fail("eff.orders", "must not be empty");
    for (int o : c.eff.orders) {
      if (o != 0 && o != 2 && o != 4 && o != 6) {
        fail("eff.orders", "orders must be drawn from {0, 2, 4, 6}, got " + std::to_string(o));
      }
      if (o == 6 && c.eff.system != SystemKind::transverse1d) {
        fail("eff.orders", "order 6 is only available for the transverse1d system");
      }
    }
    if (!power_of_two(c.eff.nx) || !power_of_two(c.eff.ny)) {
      fail("eff", "nx and ny must be powers of two");
    }
    if (!(c.eff.safety > 0)) fail("eff.safety", "must be positive");
  }
  if (c.fv.enabled) {
    const double periods = c.domain.Ly() / Medium::kPeriod;
    if (std::abs(periods - std::round(periods)) > 1e-9) {
      fail("domain.y", "must span an integer number of periods for the FV solver");
    }
    if (c.fv.cells_per_period < 8 || c.fv.cells_per_period % 2 != 0) {
      fail("fv.cells_per_period", "must be an even integer >= 8");
    }
    if (c.medium.kind() == MediumKind::piecewise && c.fv.cells_per_period % 4 != 0) {
      fail("fv.cells_per_period", "piecewise media need a multiple of 4");
    }
    if (!(c.fv.cfl > 0) || c.fv.cfl > 1) fail("fv.cfl", "must lie in (0, 1]");
  }
  if (c.comparison == ComparisonKind::profile) {
    if (!c.fv.enabled || !c.eff.enabled || c.eff.system != SystemKind::transverse1d) {
      fail("config.comparison", "profile comparison needs fv and a transverse1d eff block");
    }
  }
  if (c.comparison == ComparisonKind::fronts) {
    if (!c.fv.enabled || c.initial.type != InitialConfig::Type::gaussian2d) {
      fail("config.comparison", "front comparison needs fv and a gaussian2d initial state");
    }
  }
  if (c.eff.enabled || c.fv.enabled) {
    // Fronts must not wrap around the periodic domain within t_end.
    const auto avg = averages(c.medium);
    const double cx = effective_sound_speed(avg, 0.0);
    const double cy = effective_sound_speed(avg, std::numbers::pi / 2);
    const double support = 4.0 * std::sqrt(c.initial.sigma2);
    const bool varies_x = c.initial.type == InitialConfig::Type::gaussian2d ||
                          c.initial.axis == 'x';
    const bool varies_y = c.initial.type == InitialConfig::Type::gaussian2d ||
                          c.initial.axis == 'y';
    if (varies_x && c.domain.Lx() < 2 * cx * c.t_end + support) {
      fail("domain.x", "too short: fronts would wrap before t_end (need >= " +
                           std::to_string(2 * cx * c.t_end + support) + ")");
    }
    if (varies_y && c.domain.Ly() < 2 * cy * c.t_end + support) {
      fail("domain.y", "too short: fronts would wrap before t_end (need >= " +
                           std::to_string(2 * cy * c.t_end + support) + ")");
    }
  }
  for (const auto& s : c.outputs.slices) {
    if (s.size() < 3 || (s[0] != 'x' && s[0] != 'y') || s[1] != '=') {
      fail("outputs.slices", "expected entries like \"x=0\" or \"y=0\", got '" + s + "'");
    }
    try {
      (void)std::stod(s.substr(2));
    } catch (const std::exception&) {
      fail("outputs.slices", "bad coordinate in '" + s + "'");
    }
  }
}

Grid2D eff_grid(const ExperimentConfig& c) {
  Grid2D g;
  g.x0 = c.domain.x0;
  g.Lx = c.domain.Lx();
  g.y0 = c.domain.y0;
  g.Ly = c.domain.Ly();
  g.nx = c.eff.nx;
  g.ny = c.eff.ny;
  g.cell_centered = false;
  return g;
}

Grid2D fv_grid(const ExperimentConfig& c) {
  Grid2D g;
  g.x0 = c.domain.x0;
  g.Lx = c.domain.Lx();
  g.y0 = c.domain.y0;
  g.Ly = c.domain.Ly();
  const double per = c.fv.cells_per_period;
  g.nx = c.fv.nx ? c.fv.nx : static_cast<std::size_t>(std::llround(per * g.Lx));
  g.ny = static_cast<std::size_t>(std::llround(per * g.Ly));
  g.cell_centered = true;
  return g;
}

WaveField initial_field(const InitialConfig& ic, const Grid2D& grid) {
  WaveField f(grid, 0.0);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      f.p[grid.index(i, j)] = ic(grid.x(i), grid.y(j));
    }
  }
  return f;
}

}  // namespace layerwave
