#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "layerwave/compare.hpp"
#include "layerwave/config.hpp"

namespace layerwave {

inline constexpr const char* kVersion = "0.1.0";

struct FrontResult {
  std::string solver;  // "fv" or "eff"
  int order = 0;
  AxisSpeedFit fit;
  double front_x = 0;  // fitted axis speed times t_end
  double front_y = 0;
};

struct ExperimentResult {
  std::filesystem::path directory;
  nlohmann::json manifest;
  std::optional<ComparisonReport> comparison;
  std::vector<FrontResult> fronts;
  std::optional<Profile> fv_profile;
  std::vector<OrderedProfile> eff_profiles;
};

struct RunOptions {
  bool write_files = true;
};

// LAYERWAVE_OUT when set, otherwise ./artifacts.
std::filesystem::path output_root();

// Runs every solver in the config (concurrently), compares when requested,
// and writes CSV artifacts plus manifest.json under root/outputs.directory.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& root,
                                const RunOptions& options = {});

std::vector<std::string> builtin_names();
// Throws ConfigError for an unknown name.
std::vector<ExperimentConfig> builtin(const std::string& name);

// Runs all configs of a built-in concurrently, one directory each.
std::vector<ExperimentResult> run_builtin(const std::string& name,
                                          const std::filesystem::path& root,
                                          const RunOptions& options = {});

}  // namespace layerwave
