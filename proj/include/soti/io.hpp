#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "soti/band.hpp"
#include "soti/dynamics.hpp"
#include "soti/entanglement.hpp"

namespace soti::io {

using nlohmann::json;

/// Round-trip-safe decimal formatting (17 significant digits).
std::string format_g17(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// One CSV with a header row; all numeric cells pre-formatted by the caller.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Grayscale portable graymap (P2), one block of pixels_per_site^2 per lattice
/// site, normalized to the maximum value of the figure. Row 0 is the top row.
void write_pgm(const std::filesystem::path& path, const Eigen::VectorXd& site_values,
               const LatticeGeometry& geometry, int pixels_per_site = 16);

// -- structured reports -----------------------------------------------------

json to_json(const GapReport& gap);
json to_json(const InvariantReport& report);
json to_json(const WilsonLoopData& data);
json to_json(const TwoQubitState& state);  // entries with re/im parts

std::vector<std::vector<std::string>> band_structure_rows(const BandStructure& bs);
std::vector<std::string> band_structure_header();

std::vector<std::vector<std::string>> spectrum_rows(const EigenSolution& sol);
std::vector<std::string> spectrum_header();

std::vector<std::vector<std::string>> intensity_rows(const PhotonState& state,
                                                     const LatticeGeometry& geometry);
std::vector<std::string> intensity_header();

std::vector<std::vector<std::string>> sweep_rows(const SweepReport& report);
std::vector<std::string> sweep_header();

// -- run manifest -------------------------------------------------------------

struct RunManifest {
  std::string command;
  std::uint64_t config_hash = 0;
  std::string code_version = kVersion;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

/// Hash of the canonical (sorted-key) JSON dump.
std::uint64_t config_hash(const json& config);

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

std::string iso_timestamp();

}  // namespace soti::io
