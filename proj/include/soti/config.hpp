#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "soti/lattice.hpp"

namespace soti {

struct ConfigError : SpecError {
  using SpecError::SpecError;
};

struct InjectionConfig {
  std::string kind = "single_site";  // single_site | corner_superposition | custom
  int col = 0, row = 0;
  std::vector<double> amplitudes;  // custom only: re, im pairs, site-major
};

struct RunConfig {
  int k_path_points = 60;
  int k_grid = 201;
  int wilson_grid = 101;
  int occupied_bands = 1;
  std::vector<double> z_grid = {10, 15, 20, 25, 30};
  InjectionConfig injection;
  int return_width = 0;
  double window_halfwidth_rel = 1e-6;
  double corner_threshold = 0.5;
  double edge_threshold = 0.5;
  double coupler_strength = 1.0;
  std::optional<double> coupler_length;  // default: canonical pi/(4c)
  double visibility_exponent = 1.0;
  int disorder_realizations = 20;
};

struct OutputConfig {
  std::string dir = "out";
  std::string format = "csv";  // csv | json
  bool heatmaps = true;
  int pixels_per_site = 16;
};

struct ExperimentConfig {
  LatticeSpec lattice;
  RunConfig run;
  OutputConfig output;

  void validate() const;
};

/// Strict parse: unknown keys anywhere are a ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json serialize_config(const ExperimentConfig& config);

}  // namespace soti
