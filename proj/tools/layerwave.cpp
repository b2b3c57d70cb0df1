/// Command-line front end: coefficient tables, dispersion data, single-solver
/// runs, canned experiments and profile comparison.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "layerwave/coeffs.hpp"
#include "layerwave/compare.hpp"
#include "layerwave/config.hpp"
#include "layerwave/csv.hpp"
#include "layerwave/dispersion.hpp"
#include "layerwave/error.hpp"
#include "layerwave/experiments.hpp"
#include "layerwave/fastfield.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace layerwave;

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

// Accepts an experiment config, a manifest (its "config" key), or a bare
// medium block.
Medium medium_from(const fs::path& path) {
  json j = read_json(path);
  if (j.contains("config")) j = j.at("config");
  if (j.contains("medium")) j = j.at("medium");
  return parse_medium(j, path.parent_path());
}

ExperimentConfig config_from(const fs::path& path) {
  json j = read_json(path);
  if (j.contains("config") && j.at("config").is_object()) j = j.at("config");
  return parse_config(j, path.parent_path());
}

fs::path resolve_out(const std::string& out) {
  if (out.empty()) return output_root();
  const fs::path p(out);
  if (p.is_absolute()) return p;
  if (const char* env = std::getenv("LAYERWAVE_OUT"); env && *env) return fs::path(env) / p;
  return p;
}

void print_report(const ExperimentResult& r) {
  std::cout << "wrote " << r.directory.string() << "\n";
  if (r.comparison) {
    for (const auto& e : r.comparison->errors) {
      std::cout << "  order " << e.order << ": rel_l2 " << e.rel_l2 << ", rel_linf " << e.rel_linf
                << "\n";
    }
    std::cout << "  monotone: " << (r.comparison->monotone ? "yes" : "no") << "\n";
  }
  for (const auto& f : r.fronts) {
    std::cout << "  " << f.solver << " order " << f.order << ": front_x " << f.front_x
              << ", front_y " << f.front_y << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogenized and direct acoustics in layered periodic media"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config, out, name, reference;
  int order = 6;
  bool polar = false;
  std::vector<std::string> slices, profiles;
  double length = 0;

  auto* coeffs = app.add_subcommand("coeffs", "Homogenized coefficients as CSV");
  coeffs->add_option("--config", config, "Experiment config, manifest or medium JSON")
      ->required()
      ->check(CLI::ExistingFile);
  coeffs->add_option("--order", order, "Fast-variable chain depth")
      ->check(CLI::IsMember({1, 2, 3, 4, 6}));
  coeffs->add_option("--out", out, "Output CSV (default: stdout)");

  auto* disp = app.add_subcommand("dispersion", "Dispersion surface or polar speed as CSV");
  disp->add_option("--config", config)->required()->check(CLI::ExistingFile);
  disp->add_option("--order", order, "Truncation order")->check(CLI::IsMember({0, 2, 4}));
  disp->add_option("--out", out, "Output CSV")->required();
  disp->add_flag("--polar", polar, "Write theta,c_eff instead of the surface");

  auto* eff = app.add_subcommand("eff", "Run the homogenized solver of a config");
  eff->add_option("--config", config)->required()->check(CLI::ExistingFile);
  eff->add_option("--order", order, "Correction order")->check(CLI::IsMember({0, 2, 4, 6}));
  eff->add_option("--out", out, "Output directory");

  auto* fv = app.add_subcommand("fv", "Run the finite-volume solver of a config");
  fv->add_option("--config", config)->required()->check(CLI::ExistingFile);
  fv->add_option("--out", out, "Output directory");
  fv->add_option("--slice", slices, "Line trace, x=<value> or y=<value>");

  auto* exp = app.add_subcommand("experiment", "Run a built-in experiment or a config file");
  exp->add_option("name", name, "Built-in name")
      ->check(CLI::IsMember(builtin_names()));
  exp->add_option("--config", config, "Config or manifest JSON")->check(CLI::ExistingFile);
  exp->add_option("--out", out, "Output root");
  exp->callback([&] {
    if (name.empty() == config.empty()) {
      throw CLI::ValidationError("experiment", "give exactly one of <name> or --config");
    }
  });

  auto* cmp = app.add_subcommand("compare", "Compare homogenized profiles with a reference");
  cmp->add_option("--reference", reference, "Reference profile CSV (x,p,u)")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("--profile", profiles, "order=path for each homogenized profile")->required();
  cmp->add_option("--length", length, "Periodic domain length")->required();
  cmp->add_option("--out", out, "Output CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*coeffs) {
      const auto c = compute_coefficients(solve_fastvars(medium_from(config), order));
      if (out.empty()) {
        std::cout << "name,value,order,provenance\n";
        for (std::size_t k = 0; k < kCoefCount; ++k) {
          const auto id = static_cast<Coef>(k);
          std::cout << layerwave::name(id) << "," << (c.has(id) ? format_double(c.get(id)) : "nan") << ","
                    << order_of(id) << "," << layerwave::name(c.provenance()) << "\n";
        }
      } else {
        write_coefficients_csv(resolve_out(out), c);
      }
    } else if (*disp) {
      const auto m = medium_from(config);
      const auto avg = averages(m);
      std::vector<double> th;
      for (int i = 0; i <= 72; ++i) th.push_back(2 * std::numbers::pi * i / 72);
      if (polar) {
        write_polar_csv(resolve_out(out), polar_speed(avg, th));
      } else {
        const auto c = compute_coefficients(solve_fastvars(m, 4));
        std::vector<double> ks;
        for (int i = 1; i <= 64; ++i) ks.push_back(kWavenumberCutoff * i / 64);
        write_dispersion_csv(resolve_out(out), dispersion_surface(c, avg, ks, th, order));
      }
    } else if (*eff) {
      auto cfg = config_from(config);
      if (!cfg.eff.enabled) throw ConfigError("config has no eff block");
      if (eff->count("--order")) cfg.eff.orders = {order};
      cfg.fv.enabled = false;
      cfg.comparison = ComparisonKind::none;
      cfg.outputs.directory.clear();
      print_report(run_experiment(cfg, resolve_out(out)));
    } else if (*fv) {
      auto cfg = config_from(config);
      if (!cfg.fv.enabled) throw ConfigError("config has no fv block");
      cfg.eff.enabled = false;
      cfg.comparison = ComparisonKind::none;
      cfg.outputs.directory.clear();
      if (!slices.empty()) cfg.outputs.slices = slices;
      print_report(run_experiment(cfg, resolve_out(out)));
    } else if (*exp) {
      const fs::path root = out.empty() ? output_root() : resolve_out(out);
      if (!name.empty()) {
        for (const auto& r : run_builtin(name, root)) print_report(r);
      } else {
        print_report(run_experiment(config_from(config), root));
      }
    } else if (*cmp) {
      auto load = [](const std::string& path) {
        const auto t = read_csv(path);
        return Profile{t.column("x"), t.column("p"), t.column("u")};
      };
      std::vector<OrderedProfile> hs;
      for (const auto& spec : profiles) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw ConfigError("--profile expects order=path, got " + spec);
        hs.push_back({std::stoi(spec.substr(0, eq)), load(spec.substr(eq + 1))});
      }
      const auto rep = compare_solutions(load(reference), hs, length);
      if (out.empty()) {
        std::cout << "order,rel_l2,rel_linf\n";
        for (const auto& e : rep.errors) {
          std::cout << e.order << "," << format_double(e.rel_l2) << ","
                    << format_double(e.rel_linf) << "\n";
        }
        std::cout << "# monotone " << (rep.monotone ? "yes" : "no") << "\n";
      } else {
        CsvWriter w(resolve_out(out), {"order", "rel_l2", "rel_linf"});
        for (const auto& e : rep.errors) w.row({double(e.order), e.rel_l2, e.rel_linf});
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "layerwave: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
