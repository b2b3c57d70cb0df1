#include "layerwave/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>

#include "layerwave/coeffs.hpp"
#include "layerwave/csv.hpp"
#include "layerwave/effsolver.hpp"
#include "layerwave/error.hpp"
#include "layerwave/fastfield.hpp"

namespace layerwave {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json averages_json(const MediumAverages& a) {
  return {{"K_m", a.K_m},
          {"K_h", a.K_h},
          {"rho_m", a.rho_m},
          {"rho_h", a.rho_h},
          {"constant_impedance", a.constant_impedance},
          {"constant_soundspeed", a.constant_soundspeed}};
}

json coeffs_json(const HomogCoefficients& c) {
  json j = json::object();
  for (std::size_t k = 0; k < kCoefCount; ++k) {
    const auto id = static_cast<Coef>(k);
    j[std::string(name(id))] = c.has(id) ? json(c.get(id)) : json(nullptr);
  }
  return j;
}

std::string time_tag(double t) { return "_t" + format_double(t); }

struct EffOutcome {
  int order;
  EffRunInfo info;
  std::vector<WaveField> snaps;
  double seconds;
};

struct FVOutcome {
  FVRunInfo info;
  std::vector<WaveField> snaps;
  double seconds;
};

Profile field_profile(const WaveField& f) { return y_average(f); }

std::vector<std::pair<char, double>> parse_slices(const std::vector<std::string>& s) {
  std::vector<std::pair<char, double>> out;
  for (const auto& e : s) out.emplace_back(e[0], std::stod(e.substr(2)));
  return out;
}

}  // namespace

std::filesystem::path output_root() {
  if (const char* env = std::getenv("LAYERWAVE_OUT"); env && *env) return env;
  return "artifacts";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& root,
                                const RunOptions& options) {
  validate(cfg);
  const auto t_start = Clock::now();
  ExperimentResult res;
  res.directory = root / cfg.outputs.directory;
  const bool write = options.write_files;
  if (write) std::filesystem::create_directories(res.directory);
  std::vector<std::string> files;
  auto out_path = [&](const std::string& f) {
    files.push_back(f);
    return res.directory / f;
  };

  const auto avg = averages(cfg.medium);
  const auto table = solve_fastvars(cfg.medium, 6);
  const auto coeffs = compute_coefficients(table);
  if (write) {
    write_coefficients_csv(out_path("coeffs.csv"), coeffs);
    if (cfg.outputs.fastvars) write_fastvars_csv(out_path("fastvars.csv"), table);
  }

  json manifest;
  manifest["version"] = kVersion;
  manifest["name"] = cfg.name;
  manifest["config"] = to_json(cfg);
  manifest["medium"] = {{"description", cfg.medium.describe()},
                        {"kind", to_string(cfg.medium.kind())},
                        {"averages", averages_json(avg)}};
  manifest["coefficients"] = {{"provenance", std::string(name(coeffs.provenance()))},
                              {"values", coeffs_json(coeffs)}};
  manifest["fastvars"] = {{"exact", table.exact()},
                          {"residual_max", table.residuals().max_abs()},
                          {"warnings", table.warnings()}};

  if (cfg.dispersion.enabled) {
    std::vector<double> ks = cfg.dispersion.k, th = cfg.dispersion.theta;
    if (ks.empty()) {
      for (int i = 1; i <= 64; ++i) ks.push_back(kWavenumberCutoff * i / 64.0);
    }
    if (th.empty()) {
      for (int i = 0; i <= 72; ++i) th.push_back(2.0 * std::numbers::pi * i / 72.0);
    }
    const auto surf = dispersion_surface(coeffs, avg, ks, th, cfg.dispersion.order);
    if (write) {
      write_dispersion_csv(out_path("dispersion.csv"), surf);
      if (cfg.dispersion.polar) write_polar_csv(out_path("polar.csv"), polar_speed(avg, th));
    }
    manifest["dispersion"] = {{"order", cfg.dispersion.order},
                              {"cutoff", kWavenumberCutoff},
                              {"samples", surf.size()}};
  }

  // Solver runs are independent; launch them together.
  std::optional<FVGrid> fvg;
  std::vector<std::future<EffOutcome>> eff_jobs;
  std::optional<std::future<FVOutcome>> fv_job;
  if (cfg.fv.enabled) {
    fvg.emplace(FVGrid::from_medium(cfg.medium, fv_grid(cfg)));
    fv_job = std::async(std::launch::async, [&] {
      const auto t0 = Clock::now();
      FVParams p;
      p.cfl = cfg.fv.cfl;
      p.limiter = cfg.fv.limiter;
      p.t_end = cfg.t_end;
      p.output_times = cfg.outputs.times;
      FVOutcome o;
      o.snaps = run_fv(*fvg, initial_field(cfg.initial, fvg->grid()), p, &o.info);
      o.seconds = seconds_since(t0);
      return o;
    });
  }
  if (cfg.eff.enabled) {
    for (int order : cfg.eff.orders) {
      eff_jobs.push_back(std::async(std::launch::async, [&, order] {
        const auto t0 = Clock::now();
        EffSolverParams p;
        p.system = cfg.eff.system;
        p.order = order;
        p.safety = cfg.eff.safety;
        p.t_end = cfg.t_end;
        p.output_times = cfg.outputs.times;
        p.spectral_cutoff = cfg.eff.cutoff;
        EffOutcome o;
        o.order = order;
        o.snaps = run(coeffs, avg, p, initial_field(cfg.initial, eff_grid(cfg)), &o.info);
        o.seconds = seconds_since(t0);
        return o;
      }));
    }
  }

  const auto slices = parse_slices(cfg.outputs.slices);
  auto write_field_outputs = [&](const std::string& stem, const WaveField& f,
                                 bool is_final, bool one_d) {
    if (!write) return;
    const std::string tag = is_final ? "" : time_tag(f.t);
    if (one_d) {
      write_profile_csv(out_path(stem + tag + ".csv"), field_profile(f));
      return;
    }
    if (cfg.outputs.snapshots) write_field_csv(out_path(stem + tag + ".csv"), f);
    if (cfg.outputs.profiles) {
      write_profile_csv(out_path(stem + "_profile" + tag + ".csv"), field_profile(f));
    }
    for (const auto& [axis, at] : slices) {
      // "x=0" is the trace along the line x = 0, i.e. a function of y.
      const char along = axis == 'x' ? 'y' : 'x';
      write_slice_csv(out_path(stem + "_slice_" + std::string(1, axis) + "=" +
                               format_double(at) + tag + ".csv"),
                      f, along, at);
    }
  };

  json runs = json::array();
  std::vector<EffOutcome> eff_results;
  for (auto& job : eff_jobs) eff_results.push_back(job.get());
  for (const auto& o : eff_results) {
    const std::string stem = "eff_order" + std::to_string(o.order);
    const bool one_d = cfg.eff.system == SystemKind::transverse1d;
    for (std::size_t s = 0; s < o.snaps.size(); ++s) {
      write_field_outputs(stem, o.snaps[s], s + 1 == o.snaps.size(), one_d);
    }
    res.eff_profiles.push_back({o.order, field_profile(o.snaps.back())});
    runs.push_back({{"solver", "eff"},
                    {"system", std::string(name(cfg.eff.system))},
                    {"order", o.order},
                    {"nx", cfg.eff.nx},
                    {"ny", cfg.eff.ny},
                    {"dt", o.info.dt},
                    {"steps", o.info.steps},
                    {"max_omega", o.info.max_omega},
                    {"frozen_modes", o.info.frozen_modes},
                    {"seconds", o.seconds}});
  }
  std::optional<FVOutcome> fv_result;
  if (fv_job) {
    fv_result = fv_job->get();
    for (std::size_t s = 0; s < fv_result->snaps.size(); ++s) {
      write_field_outputs("fv", fv_result->snaps[s], s + 1 == fv_result->snaps.size(),
                          false);
    }
    res.fv_profile = field_profile(fv_result->snaps.back());
    const auto& g = fvg->grid();
    runs.push_back({{"solver", "fv"},
                    {"nx", g.nx},
                    {"ny", g.ny},
                    {"cells_per_period", cfg.fv.cells_per_period},
                    {"cfl", cfg.fv.cfl},
                    {"limiter", std::string(name(cfg.fv.limiter))},
                    {"dt", fv_result->info.dt},
                    {"steps", fv_result->info.steps},
                    {"energy_initial", fv_result->info.energy_initial},
                    {"energy_final", fv_result->info.energy_final},
                    {"seconds", fv_result->seconds}});
  }
  manifest["runs"] = runs;

  if (cfg.comparison == ComparisonKind::profile) {
    const auto rep = compare_solutions(*res.fv_profile, res.eff_profiles, cfg.domain.Lx());
    res.comparison = rep;
    json errs = json::array();
    if (write) {
      CsvWriter w(out_path("comparison.csv"), {"order", "rel_l2", "rel_linf"});
      for (const auto& e : rep.errors) {
        w.row({static_cast<double>(e.order), e.rel_l2, e.rel_linf});
      }
      w.close();
    }
    for (const auto& e : rep.errors) {
      errs.push_back({{"order", e.order}, {"rel_l2", e.rel_l2}, {"rel_linf", e.rel_linf}});
    }
    manifest["comparison"] = {{"errors", errs}, {"monotone", rep.monotone}};
  }
  if (cfg.comparison == ComparisonKind::fronts) {
    const double cx0 = effective_sound_speed(avg, 0.0);
    const double cy0 = effective_sound_speed(avg, std::numbers::pi / 2);
    auto fit_one = [&](const std::string& solver, int order, const WaveField& f) {
      const auto p0 = initial_field(cfg.initial, f.grid).p;
      FrontResult fr;
      fr.solver = solver;
      fr.order = order;
      fr.fit = fit_axis_speeds(f, p0, f.t, cx0, cy0);
      fr.front_x = fr.fit.c_x * f.t;
      fr.front_y = fr.fit.c_y * f.t;
      return fr;
    };
    res.fronts.push_back(fit_one("fv", -1, fv_result->snaps.back()));
    for (const auto& o : eff_results) {
      if (cfg.eff.system == SystemKind::full2d) {
        res.fronts.push_back(fit_one("eff", o.order, o.snaps.back()));
      }
    }
    json fj = json::array();
    for (const auto& f : res.fronts) {
      fj.push_back({{"solver", f.solver}, {"order", f.order}, {"c_x", f.fit.c_x},
                    {"c_y", f.fit.c_y},   {"front_x", f.front_x}, {"front_y", f.front_y},
                    {"residual", f.fit.residual}});
    }
    if (write) {
      CsvWriter w(out_path("fronts.csv"),
                  {"solver", "order", "c_x", "c_y", "front_x", "front_y", "predicted_x",
                   "predicted_y", "residual"});
      for (const auto& f : res.fronts) {
        const std::array<std::string, 9> cells{
            f.solver,
            std::to_string(f.order),
            format_double(f.fit.c_x),
            format_double(f.fit.c_y),
            format_double(f.front_x),
            format_double(f.front_y),
            format_double(cx0 * cfg.t_end),
            format_double(cy0 * cfg.t_end),
            format_double(f.fit.residual)};
        w.row_text(cells);
      }
      w.close();
    }
    manifest["fronts"] = {{"predicted_x", cx0 * cfg.t_end},
                          {"predicted_y", cy0 * cfg.t_end},
                          {"fits", fj}};
  }

  manifest["seconds"] = seconds_since(t_start);
  manifest["reproduce"] = "layerwave experiment --config manifest.json";
  if (write) {
    files.push_back("manifest.json");
    manifest["files"] = files;
    std::ofstream out(res.directory / "manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw Error("failed writing manifest in " + res.directory.string());
  }
  res.manifest = std::move(manifest);
  return res;
}

namespace {

json piecewise(double KA, double KB, double rA, double rB) {
  return {{"kind", "piecewise"}, {"K_A", KA}, {"K_B", KB}, {"rho_A", rA}, {"rho_B", rB}};
}

// Two-layer medium with K = 1, rho_h = 1 and the given rho_m.
json rho_m_medium(double rho_m) {
  const double s = std::sqrt(rho_m * rho_m - rho_m);
  return piecewise(1.0, 1.0, rho_m + s, rho_m - s);
}

json quadrant(const std::string& label, json medium) {
  return {{"name", "quadrants-" + label},
          {"medium", std::move(medium)},
          {"initial", {{"type", "gaussian2d"}, {"amplitude", 1.0}, {"center", {0.0, 0.0}},
                       {"sigma", 2.0}}},
          {"domain", {{"x", {-20.0, 20.0}}, {"y", {-20.0, 20.0}}}},
          {"t_end", 10.0},
          {"fv", {{"cells_per_period", 32}, {"cfl", 0.9}, {"limiter", "mc"}}},
          {"eff", {{"system", "2d"}, {"orders", {0, 2, 4}}, {"nx", 256}, {"ny", 256}}},
          {"outputs", {{"directory", "quadrants/" + label},
                       {"slices", {"x=0", "y=0"}},
                       {"snapshots", true}}}};
}

json planewave(const std::string& label, json medium, double t_end, int cells_per_period,
               int x_cells_per_unit) {
  const double half = 205.0;
  return {{"name", "planewave-transverse-" + label},
          {"medium", std::move(medium)},
          {"initial", {{"type", "gaussian1d"}, {"axis", "x"}, {"amplitude", 10.0},
                       {"center", 0.0}, {"sigma2", 5.0}}},
          {"domain", {{"x", {-half, half}}, {"y", {0.0, 1.0}}}},
          {"t_end", t_end},
          {"fv", {{"cells_per_period", cells_per_period},
                  {"nx", static_cast<int>(2 * half) * x_cells_per_unit},
                  {"cfl", 0.9},
                  {"limiter", "mc"}}},
          {"eff", {{"system", "transverse1d"}, {"orders", {0, 2, 4, 6}}, {"nx", 1024},
                   {"safety", 0.1}}},
          {"comparison", "profile"},
          {"outputs", {{"directory", "planewave-transverse/" + label},
                       {"snapshots", false}}}};
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"quadrants", "polar-speed", "anisotropy", "planewave-transverse",
          "almost-isotropic"};
}

std::vector<ExperimentConfig> builtin(const std::string& name) {
  std::vector<json> docs;
  if (name == "quadrants") {
    docs.push_back(quadrant("homogeneous", piecewise(1, 1, 1, 1)));
    docs.push_back(quadrant("constant-impedance", piecewise(0.625, 2.5, 1.6, 0.4)));
    docs.push_back(quadrant("constant-soundspeed", piecewise(2.0, 0.5, 2.0, 0.5)));
    docs.push_back(quadrant("variable", piecewise(8.5, 17.0 / 32.0, 1.0, 1.0)));
  } else if (name == "polar-speed") {
    for (double rm : {1.0, 2.0, 4.0, 8.0}) {
      const std::string label = "rho_m=" + format_double(rm);
      docs.push_back({{"name", "polar-speed-" + label},
                      {"medium", rho_m_medium(rm)},
                      {"initial", {{"type", "gaussian2d"}, {"sigma", 1.0}}},
                      {"domain", {{"x", {0.0, 1.0}}, {"y", {0.0, 1.0}}}},
                      {"t_end", 1.0},
                      {"dispersion", {{"order", 0}, {"polar", true}}},
                      {"outputs", {{"directory", "polar-speed/" + label},
                                   {"fastvars", false}}}});
    }
  } else if (name == "anisotropy") {
    docs.push_back({{"name", "anisotropy"},
                    {"medium", rho_m_medium(8.0)},
                    {"initial", {{"type", "gaussian2d"}, {"amplitude", 5.0},
                                 {"center", {20.0, 10.0}}, {"sigma2", 10.0}}},
                    {"domain", {{"x", {0.0, 40.0}}, {"y", {0.0, 20.0}}}},
                    {"t_end", 5.0},
                    {"fv", {{"cells_per_period", 32}, {"cfl", 0.9}, {"limiter", "mc"}}},
                    {"eff", {{"system", "2d"}, {"orders", {0}}, {"nx", 256}, {"ny", 128}}},
                    {"comparison", "fronts"},
                    {"outputs", {{"directory", "anisotropy"},
                                 {"slices", {"x=20", "y=10"}},
                                 {"snapshots", true}}}});
  } else if (name == "planewave-transverse") {
    // About 200 periods of travel at the transverse effective speed.
    const double travel = 200.0;
    const auto pw = Medium::piecewise(0.625, 2.5, 1.6, 0.4);
    const auto sn = Medium::sinusoidal(0.625, 2.5);
    docs.push_back(planewave("piecewise", piecewise(0.625, 2.5, 1.6, 0.4),
                             travel / effective_sound_speed(averages(pw), 0.0), 32, 16));
    docs.push_back(planewave("sinusoidal", {{"kind", "sinusoidal"}, {"K_A", 0.625}, {"K_B", 2.5}},
                             travel / effective_sound_speed(averages(sn), 0.0), 64, 8));
  } else if (name == "almost-isotropic") {
    docs.push_back({{"name", "almost-isotropic"},
                    {"medium", piecewise(8.5, 17.0 / 32.0, 1.0, 1.0)},
                    {"initial", {{"type", "gaussian2d"}, {"amplitude", 1.0},
                                 {"center", {0.0, 0.0}}, {"sigma", 2.0}}},
                    {"domain", {{"x", {-20.0, 20.0}}, {"y", {-20.0, 20.0}}}},
                    {"t_end", 10.0},
                    {"fv", {{"cells_per_period", 32}, {"cfl", 0.9}, {"limiter", "mc"}}},
                    {"eff", {{"system", "2d"}, {"orders", {0, 2, 4}}, {"nx", 256}, {"ny", 256}}},
                    {"dispersion", {{"order", 4}, {"polar", true}}},
                    {"outputs", {{"directory", "almost-isotropic"},
                                 {"slices", {"x=0", "y=0"}},
                                 {"snapshots", true}}}});
  } else {
    throw ConfigError("unknown built-in experiment '" + name + "'");
  }
  std::vector<ExperimentConfig> out;
  for (const auto& d : docs) out.push_back(parse_config(d));
  return out;
}

std::vector<ExperimentResult> run_builtin(const std::string& name,
                                          const std::filesystem::path& root,
                                          const RunOptions& options) {
  const auto configs = builtin(name);
  std::vector<std::future<ExperimentResult>> jobs;
  for (const auto& c : configs) {
    jobs.push_back(std::async(std::launch::async,
                              [&root, &options, c] { return run_experiment(c, root, options); }));
  }
  std::vector<ExperimentResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace layerwave
