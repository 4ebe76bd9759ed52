#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "soti/config.hpp"
#include "soti/dynamics.hpp"

namespace soti {

/// Shared command options coming from CLI flags.
struct CommandOptions {
  std::filesystem::path out_dir = "out";
  int threads = 1;
};

/// Each command runs one experiment into its output directory, returns the
/// files it wrote, and leaves a manifest.json sufficient to re-run it.
/// Identical config (and seed) produces byte-identical data files.
std::vector<std::string> cmd_bands(const ExperimentConfig& cfg, const CommandOptions& opt);
std::vector<std::string> cmd_invariants(const ExperimentConfig& cfg, const CommandOptions& opt);
std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg, const CommandOptions& opt);
std::vector<std::string> cmd_evolve(const ExperimentConfig& cfg, const CommandOptions& opt);
std::vector<std::string> cmd_disorder_sweep(const ExperimentConfig& cfg,
                                            const CommandOptions& opt);
std::vector<std::string> cmd_coupler(const ExperimentConfig& cfg, const CommandOptions& opt);
std::vector<std::string> cmd_entangle(const ExperimentConfig& cfg, const CommandOptions& opt);

/// Re-create the data behind one figure of the study. Valid ids:
/// fig1, fig2, fig3, fig4, robustness, entangle.
std::vector<std::string> cmd_reproduce(const std::string& figure_id, const CommandOptions& opt);

std::vector<std::string> valid_figure_ids();

/// Injection from config, resolved against a lattice geometry; also reports
/// the reference site used for return-probability traces.
PhotonState build_injection(const InjectionConfig& inj, const LatticeGeometry& g,
                            int* reference_site = nullptr);

}  // namespace soti
