#include "soti/config.hpp"

#include <fstream>
#include <set>

namespace soti {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

CouplingLaw parse_law(const json& j) {
  require_keys(j, {"amplitude", "decay_length"}, "lattice.coupling_law");
  CouplingLaw law = CouplingLaw::calibrated_default();
  law.amplitude = get_or(j, "amplitude", law.amplitude);
  law.decay_length = get_or(j, "decay_length", law.decay_length);
  return law;
}

DisorderSpec parse_disorder(const json& j) {
  require_keys(j, {"level", "seed", "realization_count"}, "lattice.disorder");
  DisorderSpec d;
  d.level = get_or(j, "level", 0.0);
  d.seed = get_or<std::uint64_t>(j, "seed", 0);
  d.realization_count = get_or(j, "realization_count", 1);
  return d;
}

InjectionConfig parse_injection(const json& j) {
  require_keys(j, {"kind", "col", "row", "amplitudes"}, "run.injection");
  InjectionConfig inj;
  inj.kind = get_or<std::string>(j, "kind", "single_site");
  if (inj.kind != "single_site" && inj.kind != "corner_superposition" && inj.kind != "custom")
    throw ConfigError("run.injection.kind must be single_site, corner_superposition or custom");
  inj.col = get_or(j, "col", 0);
  inj.row = get_or(j, "row", 0);
  inj.amplitudes = get_or(j, "amplitudes", std::vector<double>{});
  if (inj.kind == "custom" && (inj.amplitudes.empty() || inj.amplitudes.size() % 2 != 0))
    throw ConfigError("custom injection needs a flat re,im amplitude list");
  return inj;
}

}  // namespace

void ExperimentConfig::validate() const {
  lattice.validate();
  if (run.k_path_points < 2) throw ConfigError("run.k_path_points must be at least 2");
  if (run.k_grid < 3) throw ConfigError("run.k_grid must be at least 3");
  if (run.wilson_grid != 0 && run.wilson_grid < 21)
    throw ConfigError("run.wilson_grid must be 0 (skip) or at least 21");
  if (run.occupied_bands < 1 || run.occupied_bands > 4)
    throw ConfigError("run.occupied_bands must be in 1..4");
  if (run.z_grid.empty()) throw ConfigError("run.z_grid must not be empty");
  for (double z : run.z_grid)
    if (z < 0) throw ConfigError("run.z_grid entries must be non-negative");
  if (run.return_width < 0) throw ConfigError("run.return_width must be non-negative");
  if (!(run.window_halfwidth_rel > 0)) throw ConfigError("run.window_halfwidth_rel must be positive");
  if (!(run.coupler_strength > 0)) throw ConfigError("run.coupler_strength must be positive");
  if (!(run.visibility_exponent > 0)) throw ConfigError("run.visibility_exponent must be positive");
  if (run.disorder_realizations < 1)
    throw ConfigError("run.disorder_realizations must be positive");
  if (output.format != "csv" && output.format != "json")
    throw ConfigError("output.format must be csv or json");
  if (output.pixels_per_site < 1) throw ConfigError("output.pixels_per_site must be positive");
}

ExperimentConfig parse_config(const json& j) {
  require_keys(j, {"lattice", "run", "output"}, "config");
  ExperimentConfig cfg;

  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    require_keys(l,
                 {"nx_cells", "ny_cells", "d_a_x", "d_a_y", "d_b_x", "d_b_y", "onsite_energy",
                  "coupling_law", "disorder"},
                 "lattice");
    cfg.lattice.nx_cells = get_or(l, "nx_cells", cfg.lattice.nx_cells);
    cfg.lattice.ny_cells = get_or(l, "ny_cells", cfg.lattice.ny_cells);
    cfg.lattice.d_a_x = get_or(l, "d_a_x", cfg.lattice.d_a_x);
    cfg.lattice.d_a_y = get_or(l, "d_a_y", cfg.lattice.d_a_y);
    cfg.lattice.d_b_x = get_or(l, "d_b_x", cfg.lattice.d_b_x);
    cfg.lattice.d_b_y = get_or(l, "d_b_y", cfg.lattice.d_b_y);
    cfg.lattice.onsite_energy = get_or(l, "onsite_energy", cfg.lattice.onsite_energy);
    if (l.contains("coupling_law")) cfg.lattice.coupling_law = parse_law(l.at("coupling_law"));
    if (l.contains("disorder")) cfg.lattice.disorder = parse_disorder(l.at("disorder"));
  }

  if (j.contains("run")) {
    const json& r = j.at("run");
    require_keys(r,
                 {"k_path_points", "k_grid", "wilson_grid", "occupied_bands", "z_grid",
                  "injection", "return_width", "window_halfwidth_rel", "corner_threshold",
                  "edge_threshold", "coupler_strength", "coupler_length", "visibility_exponent",
                  "disorder_realizations"},
                 "run");
    cfg.run.k_path_points = get_or(r, "k_path_points", cfg.run.k_path_points);
    cfg.run.k_grid = get_or(r, "k_grid", cfg.run.k_grid);
    cfg.run.wilson_grid = get_or(r, "wilson_grid", cfg.run.wilson_grid);
    cfg.run.occupied_bands = get_or(r, "occupied_bands", cfg.run.occupied_bands);
    cfg.run.z_grid = get_or(r, "z_grid", cfg.run.z_grid);
    if (r.contains("injection")) cfg.run.injection = parse_injection(r.at("injection"));
    cfg.run.return_width = get_or(r, "return_width", cfg.run.return_width);
    cfg.run.window_halfwidth_rel =
        get_or(r, "window_halfwidth_rel", cfg.run.window_halfwidth_rel);
    cfg.run.corner_threshold = get_or(r, "corner_threshold", cfg.run.corner_threshold);
    cfg.run.edge_threshold = get_or(r, "edge_threshold", cfg.run.edge_threshold);
    cfg.run.coupler_strength = get_or(r, "coupler_strength", cfg.run.coupler_strength);
    if (r.contains("coupler_length"))
      cfg.run.coupler_length = r.at("coupler_length").get<double>();
    cfg.run.visibility_exponent = get_or(r, "visibility_exponent", cfg.run.visibility_exponent);
    cfg.run.disorder_realizations =
        get_or(r, "disorder_realizations", cfg.run.disorder_realizations);
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    require_keys(o, {"dir", "format", "heatmaps", "pixels_per_site"}, "output");
    cfg.output.dir = get_or<std::string>(o, "dir", cfg.output.dir);
    cfg.output.format = get_or<std::string>(o, "format", cfg.output.format);
    cfg.output.heatmaps = get_or(o, "heatmaps", cfg.output.heatmaps);
    cfg.output.pixels_per_site = get_or(o, "pixels_per_site", cfg.output.pixels_per_site);
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json serialize_config(const ExperimentConfig& cfg) {
  json lattice{{"nx_cells", cfg.lattice.nx_cells},
               {"ny_cells", cfg.lattice.ny_cells},
               {"d_a_x", cfg.lattice.d_a_x},
               {"d_a_y", cfg.lattice.d_a_y},
               {"d_b_x", cfg.lattice.d_b_x},
               {"d_b_y", cfg.lattice.d_b_y},
               {"onsite_energy", cfg.lattice.onsite_energy},
               {"coupling_law",
                {{"amplitude", cfg.lattice.coupling_law.amplitude},
                 {"decay_length", cfg.lattice.coupling_law.decay_length}}}};
  if (cfg.lattice.disorder)
    lattice["disorder"] = json{{"level", cfg.lattice.disorder->level},
                               {"seed", cfg.lattice.disorder->seed},
                               {"realization_count", cfg.lattice.disorder->realization_count}};

  json injection{{"kind", cfg.run.injection.kind},
                 {"col", cfg.run.injection.col},
                 {"row", cfg.run.injection.row}};
  if (!cfg.run.injection.amplitudes.empty()) injection["amplitudes"] = cfg.run.injection.amplitudes;

  json run{{"k_path_points", cfg.run.k_path_points},
           {"k_grid", cfg.run.k_grid},
           {"wilson_grid", cfg.run.wilson_grid},
           {"occupied_bands", cfg.run.occupied_bands},
           {"z_grid", cfg.run.z_grid},
           {"injection", injection},
           {"return_width", cfg.run.return_width},
           {"window_halfwidth_rel", cfg.run.window_halfwidth_rel},
           {"corner_threshold", cfg.run.corner_threshold},
           {"edge_threshold", cfg.run.edge_threshold},
           {"coupler_strength", cfg.run.coupler_strength},
           {"visibility_exponent", cfg.run.visibility_exponent},
           {"disorder_realizations", cfg.run.disorder_realizations}};
  if (cfg.run.coupler_length) run["coupler_length"] = *cfg.run.coupler_length;

  return json{{"lattice", lattice},
              {"run", run},
              {"output",
               {{"dir", cfg.output.dir},
                {"format", cfg.output.format},
                {"heatmaps", cfg.output.heatmaps},
                {"pixels_per_site", cfg.output.pixels_per_site}}}};
}

}  // namespace soti
