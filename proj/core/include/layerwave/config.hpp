#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "layerwave/directsolver.hpp"
#include "layerwave/dispersion.hpp"
#include "layerwave/medium.hpp"
#include "layerwave/wavefield.hpp"

namespace layerwave {

struct InitialConfig {
  enum class Type { gaussian2d, gaussian1d };
  Type type = Type::gaussian2d;
  double amplitude = 1.0;
  double center_x = 0.0;
  double center_y = 0.0;
  double sigma2 = 1.0;  // variance of the Gaussian
  char axis = 'x';      // gaussian1d: the coordinate the profile varies in

  double operator()(double x, double y) const;
};

struct DomainConfig {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double Lx() const { return x1 - x0; }
  double Ly() const { return y1 - y0; }
};

struct EffConfig {
  bool enabled = false;
  SystemKind system = SystemKind::full2d;
  std::vector<int> orders{0};
  std::size_t nx = 64, ny = 64;
  double safety = 0.5;
  double cutoff = kWavenumberCutoff;
};

struct FVConfig {
  bool enabled = false;
  int cells_per_period = 32;
  std::size_t nx = 0;  // 0: cells_per_period per unit length
  double cfl = 0.9;
  Limiter limiter = Limiter::mc;
};

struct DispersionConfig {
  bool enabled = false;
  int order = 4;
  std::vector<double> k;
  std::vector<double> theta;
  bool polar = true;
};

enum class ComparisonKind { none, profile, fronts };

struct OutputConfig {
  std::string directory;
  std::vector<double> times;
  std::vector<std::string> slices;  // "x=<value>" or "y=<value>"
  bool snapshots = true;
  bool profiles = true;
  bool fastvars = true;
};

struct ExperimentConfig {
  std::string name = "experiment";
  nlohmann::json medium_json;
  Medium medium = Medium::piecewise(1, 1, 1, 1);
  InitialConfig initial;
  DomainConfig domain;
  EffConfig eff;
  FVConfig fv;
  DispersionConfig dispersion;
  ComparisonKind comparison = ComparisonKind::none;
  double t_end = 1.0;
  OutputConfig outputs;
};

// Builds a medium from {"kind": ..., ...}. Relative table paths resolve
// against base_dir.
Medium parse_medium(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

// Parses and validates; errors carry the offending field path.
ExperimentConfig parse_config(const nlohmann::json& j,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& c);

// Checks the cross-field invariants (period count, order sets, domain size
// against travel distance). Throws ConfigError.
void validate(const ExperimentConfig& c);

// Grids the solvers use for this config.
Grid2D eff_grid(const ExperimentConfig& c);
Grid2D fv_grid(const ExperimentConfig& c);

// Initial state sampled on a grid (velocities zero).
WaveField initial_field(const InitialConfig& ic, const Grid2D& grid);

}  // namespace layerwave
