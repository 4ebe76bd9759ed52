#include "soti/io.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace soti::io {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  for (std::size_t i = 0; i < header.size(); ++i) {
    text += header[i];
    text += (i + 1 < header.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      text += row[i];
      text += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  write_text_file(path, text);
}

void write_pgm(const std::filesystem::path& path, const Eigen::VectorXd& site_values,
               const LatticeGeometry& g, int pixels_per_site) {
  if (site_values.size() != g.n_sites()) throw SpecError("pgm: value count mismatch");
  if (pixels_per_site < 1) throw SpecError("pgm: pixels_per_site must be positive");
  const double peak = std::max(site_values.maxCoeff(), 0.0);
  constexpr int kMaxVal = 65535;
  const int w = g.n_cols * pixels_per_site, h = g.n_rows * pixels_per_site;
  std::string text = "P2\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
                     std::to_string(kMaxVal) + "\n";
  for (int py = 0; py < h; ++py) {
    const int row = py / pixels_per_site;
    for (int px = 0; px < w; ++px) {
      const int col = px / pixels_per_site;
      const double v = site_values(g.site_index(col, row));
      const int pixel =
          peak > 0 ? static_cast<int>(std::lround(std::clamp(v / peak, 0.0, 1.0) * kMaxVal)) : 0;
      text += std::to_string(pixel);
      text += (px + 1 < w) ? ' ' : '\n';
    }
  }
  write_text_file(path, text);
}

json to_json(const GapReport& gap) {
  return json{{"gap_size", gap.gap_size},
              {"gap_ratio", gap.gap_ratio},
              {"zero_gap_size", gap.zero_gap_size},
              {"spectral_range", gap.spectral_range}};
}

json to_json(const InvariantReport& r) {
  json idx = json::object();
  for (const auto& [k, v] : r.indices) idx[k] = v;
  return json{{"symmetry", to_string(r.symmetry)},
              {"indices", idx},
              {"polarization", {r.p_x, r.p_y}},
              {"corner_index", r.corner_index},
              {"phase_label", r.phase_label}};
}

json to_json(const WilsonLoopData& d) {
  return json{{"direction", std::string(1, d.direction)},
              {"grid_size", d.grid_size},
              {"polarization", d.polarization},
              {"berry_phase_per_transverse_k", d.berry_phase_per_transverse_k},
              {"converged", d.converged},
              {"refinement_delta", d.refinement_delta}};
}

json to_json(const TwoQubitState& s) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < 4; ++j) {
      rrow.push_back(s.rho(i, j).real());
      irow.push_back(s.rho(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"real", re}, {"imag", im}};
}

std::vector<std::string> band_structure_header() {
  return {"index", "kx", "ky", "E1", "E2", "E3", "E4"};
}

std::vector<std::vector<std::string>> band_structure_rows(const BandStructure& bs) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < bs.ks.size(); ++i)
    rows.push_back({std::to_string(i), format_g17(bs.ks[i].kx), format_g17(bs.ks[i].ky),
                    format_g17(bs.energies[i](0)), format_g17(bs.energies[i](1)),
                    format_g17(bs.energies[i](2)), format_g17(bs.energies[i](3))});
  return rows;
}

std::vector<std::string> spectrum_header() {
  return {"index", "energy", "w_corner", "w_edge", "w_bulk", "label"};
}

std::vector<std::vector<std::string>> spectrum_rows(const EigenSolution& sol) {
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < sol.n_states(); ++i)
    rows.push_back({std::to_string(i), format_g17(sol.energies(i)), format_g17(sol.w_corner(i)),
                    format_g17(sol.w_edge(i)), format_g17(sol.w_bulk(i)),
                    to_string(sol.classes[i])});
  return rows;
}

std::vector<std::string> intensity_header() { return {"site", "col", "row", "intensity"}; }

std::vector<std::vector<std::string>> intensity_rows(const PhotonState& state,
                                                     const LatticeGeometry& g) {
  std::vector<std::vector<std::string>> rows;
  const Eigen::VectorXd in = state.intensities();
  for (int s = 0; s < g.n_sites(); ++s) {
    const auto [c, r] = g.site_coords(s);
    rows.push_back({std::to_string(s), std::to_string(c), std::to_string(r), format_g17(in(s))});
  }
  return rows;
}

std::vector<std::string> sweep_header() {
  return {"scenario", "z_mm", "xi", "visibility", "concurrence", "purity"};
}

std::vector<std::vector<std::string>> sweep_rows(const SweepReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const SweepRow& r : report.rows)
    rows.push_back({to_string(r.scenario), format_g17(r.z_mm), format_g17(r.xi),
                    format_g17(r.visibility), format_g17(r.concurrence), format_g17(r.purity)});
  return rows;
}

std::uint64_t config_hash(const json& config) { return fnv1a64(config.dump()); }

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016" PRIx64, m.config_hash);
  const json j{{"command", m.command},          {"config_hash", std::string(hash_hex)},
               {"code_version", m.code_version}, {"seed", m.seed},
               {"started_at", m.started_at},     {"finished_at", m.finished_at},
               {"outputs", m.outputs}};
  write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

}  // namespace soti::io
