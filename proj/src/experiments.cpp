#include "soti/experiments.hpp"

#include <sstream>
#include <thread>

#include "soti/coupler.hpp"
#include "soti/io.hpp"
#include "soti/spectrum.hpp"

namespace soti {

namespace fs = std::filesystem;
using io::format_g17;
using io::json;

namespace {

struct ManifestScope {
  io::RunManifest manifest;
  fs::path dir;

  ManifestScope(const std::string& command, const ExperimentConfig& cfg, const fs::path& out_dir)
      : dir(out_dir) {
    manifest.command = command;
    manifest.config_hash = io::config_hash(serialize_config(cfg));
    manifest.seed = cfg.lattice.disorder ? cfg.lattice.disorder->seed : 0;
    manifest.started_at = io::iso_timestamp();
    fs::create_directories(dir);
    io::write_text_file(dir / "config.json", serialize_config(cfg).dump(2) + "\n");
    manifest.outputs.push_back("config.json");
  }

  void add(const std::string& name) { manifest.outputs.push_back(name); }

  std::vector<std::string> finish() {
    manifest.finished_at = io::iso_timestamp();
    io::write_manifest(dir, manifest);
    return manifest.outputs;
  }
};

void write_table(ManifestScope& scope, const std::string& stem, const OutputConfig& out,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      arr.push_back(obj);
    }
    io::write_text_file(scope.dir / (stem + ".json"), arr.dump(2) + "\n");
    scope.add(stem + ".json");
  } else {
    io::write_csv(scope.dir / (stem + ".csv"), header, rows);
    scope.add(stem + ".csv");
  }
}

/// Deterministic parallel map over realization indices: results land in a
/// slot per index, so thread scheduling cannot reorder them.
template <typename Fn>
void for_each_realization(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

PhotonState build_injection(const InjectionConfig& inj, const LatticeGeometry& g,
                            int* reference_site) {
  if (inj.kind == "single_site") {
    if (reference_site) *reference_site = g.site_index(inj.col, inj.row);
    return make_single_site(g, inj.col, inj.row);
  }
  if (inj.kind == "corner_superposition") {
    if (reference_site) *reference_site = g.corner_sites().front();
    return make_corner_superposition(g);
  }
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(inj.amplitudes.size() / 2));
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    amps(i) = complexd(inj.amplitudes[2 * i], inj.amplitudes[2 * i + 1]);
  if (amps.size() != g.n_sites())
    throw ConfigError("custom injection amplitude count does not match the lattice");
  if (reference_site) *reference_site = g.site_index(inj.col, inj.row);
  return make_custom(std::move(amps));
}

std::vector<std::string> cmd_bands(const ExperimentConfig& cfg, const CommandOptions& opt) {
  ManifestScope scope("bands", cfg, opt.out_dir);
  const BandStructure bs = band_structure(cfg.lattice, default_k_path(cfg.run.k_path_points));
  write_table(scope, "bands", cfg.output, io::band_structure_header(),
              io::band_structure_rows(bs));

  const GapReport gap = band_gap(cfg.lattice, cfg.run.k_grid);
  json rep = io::to_json(gap);
  rep["symmetry"] = to_string(symmetry_class(cfg.lattice));
  const Couplings t = couplings_from_distances(cfg.lattice);
  rep["couplings"] = {{"t_a_x", t.t_a_x}, {"t_a_y", t.t_a_y}, {"t_b_x", t.t_b_x},
                      {"t_b_y", t.t_b_y}};
  const ChiralCheck chiral = chiral_symmetry_check(cfg.lattice);
  rep["chiral_symmetry"] = {{"holds", chiral.holds}, {"max_violation", chiral.max_violation}};
  io::write_text_file(scope.dir / "gap_report.json", rep.dump(2) + "\n");
  scope.add("gap_report.json");
  return scope.finish();
}

std::vector<std::string> cmd_invariants(const ExperimentConfig& cfg, const CommandOptions& opt) {
  ManifestScope scope("invariants", cfg, opt.out_dir);
  const InvariantReport rep = topological_indices(cfg.lattice);
  json j = io::to_json(rep);
  if (cfg.run.wilson_grid > 0) {
    const WilsonLoopData wx =
        wilson_loop_polarization(cfg.lattice, 'x', cfg.run.wilson_grid, cfg.run.occupied_bands);
    const WilsonLoopData wy =
        wilson_loop_polarization(cfg.lattice, 'y', cfg.run.wilson_grid, cfg.run.occupied_bands);
    j["wilson_loop"] = {{"x", io::to_json(wx)}, {"y", io::to_json(wy)}};
    j["wilson_index_agreement"] = {
        {"x", mod1_distance(wx.polarization, rep.p_x)},
        {"y", mod1_distance(wy.polarization, rep.p_y)}};
  }
  io::write_text_file(scope.dir / "invariants.json", j.dump(2) + "\n");
  scope.add("invariants.json");
  return scope.finish();
}

std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg, const CommandOptions& opt) {
  ManifestScope scope("spectrum", cfg, opt.out_dir);
  ClassifyOptions copt;
  copt.corner_weight_threshold = cfg.run.corner_threshold;
  copt.edge_weight_threshold = cfg.run.edge_threshold;
  const EigenSolution sol =
      classify_states(eigendecompose(finite_hamiltonian(cfg.lattice)), copt);
  write_table(scope, "spectrum", cfg.output, io::spectrum_header(), io::spectrum_rows(sol));

  const double hw = cfg.run.window_halfwidth_rel * sol.spectral_range();
  const SpatialDistribution zero =
      spatial_distribution(sol, sol.onsite_energy - hw, sol.onsite_energy + hw);
  std::vector<std::vector<std::string>> rows;
  for (int s = 0; s < sol.geometry.n_sites(); ++s) {
    const auto [c, r] = sol.geometry.site_coords(s);
    rows.push_back({std::to_string(s), std::to_string(c), std::to_string(r),
                    format_g17(zero.site_density(s))});
  }
  write_table(scope, "zero_window_density", cfg.output, {"site", "col", "row", "density"}, rows);
  json summary{{"zero_window_state_count", zero.state_count},
               {"corner_state_count",
                static_cast<int>(sol.states_of_class(StateClass::Corner).size())},
               {"edge_state_count", static_cast<int>(sol.states_of_class(StateClass::Edge).size())},
               {"empty_window_warning", zero.empty_window}};
  io::write_text_file(scope.dir / "spectrum_summary.json", summary.dump(2) + "\n");
  scope.add("spectrum_summary.json");

  if (cfg.output.heatmaps) {
    io::write_pgm(scope.dir / "zero_window_density.pgm", zero.site_density, sol.geometry,
                  cfg.output.pixels_per_site);
    scope.add("zero_window_density.pgm");
  }
  return scope.finish();
}

std::vector<std::string> cmd_evolve(const ExperimentConfig& cfg, const CommandOptions& opt) {
  ManifestScope scope("evolve", cfg, opt.out_dir);
  const Evolver ev(finite_hamiltonian(cfg.lattice));
  const LatticeGeometry& g = ev.solution().geometry;
  int site = 0;
  const PhotonState psi0 = build_injection(cfg.run.injection, g, &site);
  const EvolutionResult result = run_evolution(ev, psi0, cfg.run.z_grid);

  for (std::size_t iz = 0; iz < result.distances_mm.size(); ++iz) {
    std::ostringstream stem;
    stem << "intensity_z" << result.distances_mm[iz];
    write_table(scope, stem.str(), cfg.output, io::intensity_header(),
                io::intensity_rows(result.states[iz], g));
    if (cfg.output.heatmaps) {
      io::write_pgm(scope.dir / (stem.str() + ".pgm"), result.states[iz].intensities(), g,
                    cfg.output.pixels_per_site);
      scope.add(stem.str() + ".pgm");
    }
  }

  const std::vector<double> xi = return_probability_trace(result, site, cfg.run.return_width);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t iz = 0; iz < xi.size(); ++iz)
    rows.push_back({format_g17(result.distances_mm[iz]), format_g17(xi[iz])});
  write_table(scope, "return_probability", cfg.output, {"z_mm", "xi"}, rows);

  const ModeDecomposition modes = ev.decompose(psi0);
  json mj{{"corner_weight", modes.corner_weight},
          {"edge_weight", modes.edge_weight},
          {"bulk_weight", modes.bulk_weight},
          {"dominant_mode", modes.dominant_mode},
          {"dominant_weight", modes.dominant_weight}};
  io::write_text_file(scope.dir / "mode_decomposition.json", mj.dump(2) + "\n");
  scope.add("mode_decomposition.json");
  return scope.finish();
}

std::vector<std::string> cmd_disorder_sweep(const ExperimentConfig& cfg,
                                            const CommandOptions& opt) {
  if (!cfg.lattice.disorder)
    throw ConfigError("disorder-sweep requires lattice.disorder in the config");
  ManifestScope scope("disorder-sweep", cfg, opt.out_dir);
  const int count = cfg.lattice.disorder->realization_count;
  const std::vector<double>& zs = cfg.run.z_grid;

  ClassifyOptions copt;
  copt.corner_weight_threshold = cfg.run.corner_threshold;
  copt.edge_weight_threshold = cfg.run.edge_threshold;

  std::vector<int> corner_counts(count, 0);
  std::vector<std::vector<double>> xis(count);
  for_each_realization(count, opt.threads, [&](int i) {
    const LatticeSpec realized = apply_disorder(cfg.lattice, i);
    const FiniteHamiltonian h = finite_hamiltonian(realized);
    const EigenSolution sol = classify_states(eigendecompose(h), copt);
    corner_counts[i] = static_cast<int>(sol.states_of_class(StateClass::Corner).size());
    const Evolver ev(sol);
    int site = 0;
    const PhotonState psi0 = build_injection(cfg.run.injection, sol.geometry, &site);
    xis[i] = return_probability_trace(run_evolution(ev, psi0, zs), site, cfg.run.return_width);
  });

  std::vector<std::string> header{"realization", "corner_state_count"};
  for (double z : zs) header.push_back("xi_z" + format_g17(z));
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < count; ++i) {
    std::vector<std::string> row{std::to_string(i), std::to_string(corner_counts[i])};
    for (double x : xis[i]) row.push_back(format_g17(x));
    rows.push_back(std::move(row));
  }
  write_table(scope, "ensemble", cfg.output, header, rows);

  json summary;
  summary["realizations"] = count;
  summary["eta"] = cfg.lattice.disorder->level;
  summary["corner_count_always_4"] =
      std::all_of(corner_counts.begin(), corner_counts.end(), [](int c) { return c == 4; });
  json means = json::array();
  for (std::size_t iz = 0; iz < zs.size(); ++iz) {
    double m = 0;
    for (int i = 0; i < count; ++i) m += xis[i][iz];
    means.push_back(json{{"z_mm", zs[iz]}, {"mean_xi", m / count}});
  }
  summary["mean_xi"] = means;
  io::write_text_file(scope.dir / "ensemble_summary.json", summary.dump(2) + "\n");
  scope.add("ensemble_summary.json");
  return scope.finish();
}

std::vector<std::string> cmd_coupler(const ExperimentConfig& cfg, const CommandOptions& opt) {
  ManifestScope scope("coupler", cfg, opt.out_dir);
  CouplerSpec spec{cfg.run.coupler_strength, 0.0};
  spec.length_mm = cfg.run.coupler_length.value_or(spec.canonical_length());
  const Eigen::MatrixXcd u = coupler_unitary(spec);

  std::ostringstream text;
  text << "coupling strength c = " << format_g17(spec.coupling_strength) << " 1/mm\n"
       << "length L = " << format_g17(spec.length_mm) << " mm"
       << (spec.is_canonical(1e-9) ? " (canonical pi/4c)" : "") << "\nU = exp(-i H L):\n";
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j)
      text << "(" << format_g17(u(i, j).real()) << ", " << format_g17(u(i, j).imag()) << ") ";
    text << "\n";
  }
  std::fputs(text.str().c_str(), stdout);
  io::write_text_file(scope.dir / "coupler_unitary.txt", text.str());
  scope.add("coupler_unitary.txt");

  json jm = json::array();
  for (int i = 0; i < 5; ++i) {
    json row = json::array();
    for (int j = 0; j < 5; ++j) row.push_back(json{{"re", u(i, j).real()}, {"im", u(i, j).imag()}});
    jm.push_back(row);
  }
  io::write_text_file(scope.dir / "coupler_unitary.json",
                      json{{"c", spec.coupling_strength}, {"L", spec.length_mm}, {"U", jm}}
                              .dump(2) +
                          "\n");
  scope.add("coupler_unitary.json");
  return scope.finish();
}

std::vector<std::string> cmd_entangle(const ExperimentConfig& cfg, const CommandOptions& opt) {
  ManifestScope scope("entangle", cfg, opt.out_dir);
  SweepOptions sopt;
  sopt.model.exponent = cfg.run.visibility_exponent;
  sopt.seed = cfg.lattice.disorder ? cfg.lattice.disorder->seed : 12345;
  sopt.disorder_realizations = cfg.run.disorder_realizations;
  const SweepReport rep = entanglement_sweep(sopt);
  write_table(scope, "entanglement_sweep", cfg.output, io::sweep_header(), io::sweep_rows(rep));

  json densities = json::object();
  for (Scenario s : {Scenario::Topological, Scenario::TopologicalDisordered, Scenario::Trivial,
                     Scenario::UniformWalk}) {
    const SweepRow& row = rep.at(s, 11.0);
    densities[to_string(s)] =
        io::to_json(apply_white_noise(bell_phi_plus(), row.visibility));
  }
  json j{{"ordering_holds", rep.ordering_holds},
         {"ordering_detail", rep.ordering_detail},
         {"density_matrices_at_z11", densities}};
  io::write_text_file(scope.dir / "entanglement_report.json", j.dump(2) + "\n");
  scope.add("entanglement_report.json");
  return scope.finish();
}

namespace {

ExperimentConfig base_config(double d_a_x, double d_a_y, double d_b_x, double d_b_y) {
  ExperimentConfig cfg;
  cfg.lattice.d_a_x = d_a_x;
  cfg.lattice.d_a_y = d_a_y;
  cfg.lattice.d_b_x = d_b_x;
  cfg.lattice.d_b_y = d_b_y;
  return cfg;
}

}  // namespace

std::vector<std::string> valid_figure_ids() {
  return {"fig1", "fig2", "fig3", "fig4", "robustness", "entangle"};
}

std::vector<std::string> cmd_reproduce(const std::string& figure_id, const CommandOptions& opt) {
  std::vector<std::string> written;
  auto sub = [&](const std::string& name) {
    CommandOptions o = opt;
    o.out_dir = opt.out_dir / name;
    return o;
  };
  auto collect = [&](const std::string& name, const std::vector<std::string>& files) {
    for (const auto& f : files) written.push_back(name + "/" + f);
  };

  if (figure_id == "fig1") {
    // band inversion: t_a > t_b, critical, t_a < t_b, in both symmetry classes
    const std::vector<std::pair<std::string, ExperimentConfig>> runs = {
        {"c4_trivial", base_config(14, 14, 18, 18)},
        {"c4_critical", base_config(16, 16, 16, 16)},
        {"c4_topological", base_config(22, 22, 9, 9)},
        {"c2_trivial", base_config(14, 15, 18, 19)},
        {"c2_critical", base_config(16, 17, 16, 17)},
        {"c2_topological", base_config(22, 22, 12, 9)},
    };
    for (const auto& [name, cfg] : runs) collect(name, cmd_bands(cfg, sub(name)));
  } else if (figure_id == "fig2" || figure_id == "fig3") {
    // six fabricated samples: one C4 and five C2 with d_b_x in 11..14 um
    std::vector<std::pair<std::string, ExperimentConfig>> runs = {
        {"c4_db9", base_config(22, 22, 9, 9)}};
    for (double dbx : {11.0, 11.75, 12.5, 13.25, 14.0}) {
      std::ostringstream name;
      name << "c2_dbx" << dbx;
      runs.emplace_back(name.str(), base_config(22, 22, dbx, 9));
    }
    for (auto& [name, cfg] : runs) {
      if (figure_id == "fig3") cfg.run.injection.kind = "corner_superposition";
      collect(name, cmd_evolve(cfg, sub(name)));
    }
  } else if (figure_id == "fig4") {
    for (double da : {13.0, 13.1, 13.2, 13.3, 13.4}) {
      std::ostringstream name;
      name << "da" << da;
      ExperimentConfig cfg = base_config(da, da, 11, 11);
      cfg.run.z_grid = {14, 15};
      collect(name.str(), cmd_evolve(cfg, sub(name.str())));
    }
  } else if (figure_id == "robustness") {
    ExperimentConfig topo = base_config(22, 22, 9, 9);
    topo.lattice.disorder = DisorderSpec{0.1, 12345, 50};
    collect("c4_disordered", cmd_disorder_sweep(topo, sub("c4_disordered")));
    collect("c4_trivial", cmd_evolve(base_config(14, 14, 18, 18), sub("c4_trivial")));
    collect("c2_trivial", cmd_evolve(base_config(14, 16, 18, 16), sub("c2_trivial")));
  } else if (figure_id == "entangle") {
    collect("entangle", cmd_entangle(ExperimentConfig{}, sub("entangle")));
  } else {
    std::string ids;
    for (const auto& id : valid_figure_ids()) ids += (ids.empty() ? "" : ", ") + id;
    throw ConfigError("unknown figure id '" + figure_id + "'; valid ids: " + ids);
  }

  io::write_text_file(opt.out_dir / "reproduce_index.txt", figure_id + "\n");
  written.push_back("reproduce_index.txt");
  return written;
}

}  // namespace soti
