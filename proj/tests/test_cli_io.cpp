#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "soti/experiments.hpp"
#include "soti/io.hpp"
#include "test_support.hpp"

using namespace soti;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "soti2d_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

ExperimentConfig c4_config() {
  ExperimentConfig cfg;
  cfg.lattice = test::c4_spec(22, 9);
  return cfg;
}

}  // namespace

TEST_CASE("config round trip is idempotent") {
  ExperimentConfig cfg = c4_config();
  cfg.lattice.disorder = DisorderSpec{0.1, 987, 12};
  cfg.run.injection.kind = "corner_superposition";
  const json once = serialize_config(cfg);
  const json twice = serialize_config(parse_config(once));
  CHECK(once == twice);
  const json thrice = serialize_config(parse_config(twice));
  CHECK(twice == thrice);
}

TEST_CASE("unknown or malformed config keys are rejected") {
  json j = serialize_config(c4_config());
  j["unexpected"] = 1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = serialize_config(c4_config());
  j["lattice"]["d_c_x"] = 3.0;
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = serialize_config(c4_config());
  j["run"]["zgrid"] = json::array({1.0});
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = serialize_config(c4_config());
  j["lattice"]["nx_cells"] = "four";
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = serialize_config(c4_config());
  j["output"]["format"] = "xml";
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = serialize_config(c4_config());
  j["run"]["injection"]["kind"] = "laser";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("config hash is stable and content-sensitive") {
  const json a = serialize_config(c4_config());
  CHECK(io::config_hash(a) == io::config_hash(a));
  ExperimentConfig other = c4_config();
  other.lattice.d_b_x = 9.5;
  CHECK(io::config_hash(a) != io::config_hash(serialize_config(other)));
}

TEST_CASE("cmd_bands writes the path table and gap report") {
  ExperimentConfig cfg = c4_config();
  cfg.run.k_path_points = 20;
  const fs::path dir = fresh_dir("bands");
  const auto files = cmd_bands(cfg, {dir, 1});
  CHECK(fs::exists(dir / "manifest.json"));

  const std::string csv = slurp(dir / "bands.csv");
  // header + one row per path point (3 legs of 20 plus the closing point)
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 62);

  const json gap = slurp_json(dir / "gap_report.json");
  CHECK(gap.at("symmetry") == "C4");
  CHECK(gap.at("gap_size").get<double>() > 0.01);
  CHECK(gap.at("chiral_symmetry").at("holds") == true);

  // the three coupling regimes: open / closed / open
  ExperimentConfig critical = cfg;
  critical.lattice = test::c4_spec(16, 16);
  cmd_bands(critical, {fresh_dir("bands_critical"), 1});
  const json gc = slurp_json(fs::temp_directory_path() / "soti2d_tests" / "bands_critical" /
                             "gap_report.json");
  CHECK(gc.at("gap_size").get<double>() < 1e-10);

  ExperimentConfig trivial = cfg;
  trivial.lattice = test::c4_spec(14, 18);
  cmd_bands(trivial, {fresh_dir("bands_trivial"), 1});
  const json gt = slurp_json(fs::temp_directory_path() / "soti2d_tests" / "bands_trivial" /
                             "gap_report.json");
  CHECK(gt.at("gap_size").get<double>() > 0.01);
}

TEST_CASE("cmd_invariants emits the quantized report") {
  ExperimentConfig cfg = c4_config();
  cfg.run.wilson_grid = 41;
  const fs::path dir = fresh_dir("invariants");
  cmd_invariants(cfg, {dir, 1});
  const json j = slurp_json(dir / "invariants.json");
  CHECK(j.at("corner_index").get<double>() == 0.25);
  CHECK(j.at("phase_label") == "SOTI");
  CHECK(j.at("indices").at("X1").get<int>() == -1);
  CHECK(j.at("wilson_index_agreement").at("x").get<double>() < 1e-3);

  ExperimentConfig critical = cfg;
  critical.lattice = test::c4_spec(16, 16);
  CHECK_THROWS_AS(cmd_invariants(critical, {fresh_dir("invariants_crit"), 1}), NumericalError);
}

TEST_CASE("cmd_spectrum: densities sum to the window count") {
  ExperimentConfig cfg = c4_config();
  const fs::path dir = fresh_dir("spectrum");
  cmd_spectrum(cfg, {dir, 1});
  const json summary = slurp_json(dir / "spectrum_summary.json");
  CHECK(summary.at("corner_state_count").get<int>() == 4);

  // density csv sums to the number of states in the window
  const std::string csv = slurp(dir / "zero_window_density.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  double total = 0;
  while (std::getline(lines, line)) {
    const auto last_comma = line.find_last_of(',');
    total += std::stod(line.substr(last_comma + 1));
  }
  CHECK(total == doctest::Approx(summary.at("zero_window_state_count").get<double>())
                     .epsilon(1e-9));
  CHECK(fs::exists(dir / "zero_window_density.pgm"));
  const std::string pgm = slurp(dir / "zero_window_density.pgm");
  CHECK(pgm.rfind("P2\n", 0) == 0);
}

TEST_CASE("cmd_evolve reproduces the injection at z = 0 and is byte-deterministic") {
  ExperimentConfig cfg = c4_config();
  cfg.run.z_grid = {0, 10, 30};
  const fs::path dir1 = fresh_dir("evolve1");
  const fs::path dir2 = fresh_dir("evolve2");
  const auto files1 = cmd_evolve(cfg, {dir1, 1});
  cmd_evolve(cfg, {dir2, 1});

  const std::string z0 = slurp(dir1 / "intensity_z0.csv");
  std::istringstream lines(z0);
  std::string line;
  std::getline(lines, line);
  double at_site0 = -1, total = 0;
  while (std::getline(lines, line)) {
    const auto c1 = line.find(',');
    const auto cl = line.find_last_of(',');
    const double v = std::stod(line.substr(cl + 1));
    if (line.substr(0, c1) == "0") at_site0 = v;
    total += v;
  }
  CHECK(at_site0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  for (const std::string& name : files1) {
    if (name == "manifest.json") continue;  // timestamps differ
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  }

  const json manifest = slurp_json(dir1 / "manifest.json");
  CHECK(manifest.at("command") == "evolve");
  CHECK(manifest.at("outputs").size() == files1.size());
}

TEST_CASE("cmd_disorder_sweep statistics") {
  ExperimentConfig cfg = c4_config();
  cfg.lattice.disorder = DisorderSpec{0.1, 12345, 10};
  cfg.run.z_grid = {10, 30};
  const fs::path dir = fresh_dir("disorder");
  cmd_disorder_sweep(cfg, {dir, 2});
  const json summary = slurp_json(dir / "ensemble_summary.json");
  CHECK(summary.at("corner_count_always_4") == true);
  for (const auto& row : summary.at("mean_xi")) CHECK(row.at("mean_xi").get<double>() >= 0.8);

  // eta = 0 collapses to the clean lattice
  ExperimentConfig clean = cfg;
  clean.lattice.disorder = DisorderSpec{0.0, 1, 3};
  const fs::path dir0 = fresh_dir("disorder0");
  cmd_disorder_sweep(clean, {dir0, 1});
  const json s0 = slurp_json(dir0 / "ensemble_summary.json");
  const Evolver ev(finite_hamiltonian(test::c4_spec(22, 9)));
  const PhotonState psi0 = make_single_site(ev.solution().geometry, 0, 0);
  const double xi10 = return_probability(ev.evolve(psi0, 10.0), ev.solution().geometry, 0, 0);
  CHECK(s0.at("mean_xi")[0].at("mean_xi").get<double>() == doctest::Approx(xi10).epsilon(1e-12));

  // trivial ensemble diffuses
  ExperimentConfig trivial = cfg;
  trivial.lattice = test::c4_spec(14, 18);
  trivial.lattice.disorder = DisorderSpec{0.1, 7, 10};
  const fs::path dirt = fresh_dir("disorder_trivial");
  cmd_disorder_sweep(trivial, {dirt, 1});
  const json st = slurp_json(dirt / "ensemble_summary.json");
  CHECK(st.at("mean_xi")[1].at("mean_xi").get<double>() < 0.5);

  ExperimentConfig no_disorder = c4_config();
  CHECK_THROWS_AS(cmd_disorder_sweep(no_disorder, {fresh_dir("disorder_bad"), 1}), ConfigError);
}

TEST_CASE("cmd_coupler prints the canonical unitary") {
  ExperimentConfig cfg = c4_config();
  const fs::path dir = fresh_dir("coupler");
  cmd_coupler(cfg, {dir, 1});
  const json j = slurp_json(dir / "coupler_unitary.json");
  CHECK(j.at("U")[0][0].at("re").get<double>() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(j.at("U")[1][0].at("im").get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(j.at("U")[1][1].at("re").get<double>() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("reproduce handles figure ids") {
  CHECK_THROWS_WITH_AS(cmd_reproduce("fig9", {fresh_dir("repro_bad"), 1}),
                       doctest::Contains("valid ids"), ConfigError);
  const fs::path dir = fresh_dir("repro_fig4");
  const auto files = cmd_reproduce("fig4", {dir, 1});
  CHECK(fs::exists(dir / "da13" / "return_probability.csv"));
  CHECK(fs::exists(dir / "da13.4" / "manifest.json"));
  CHECK(!files.empty());
}

TEST_CASE("json format mirrors the csv tables") {
  ExperimentConfig cfg = c4_config();
  cfg.output.format = "json";
  cfg.run.z_grid = {10};
  const fs::path dir = fresh_dir("format_json");
  cmd_evolve(cfg, {dir, 1});
  CHECK(fs::exists(dir / "intensity_z10.json"));
  CHECK(!fs::exists(dir / "intensity_z10.csv"));
  const json rows = slurp_json(dir / "intensity_z10.json");
  CHECK(rows.size() == 64);
}

TEST_CASE("custom injections resolve against the lattice") {
  const LatticeGeometry g{4, 4};
  InjectionConfig inj;
  inj.kind = "custom";
  inj.amplitudes.assign(2 * 16, 0.0);
  inj.amplitudes[2 * 5] = 1.0;  // site 5, real part
  int site = -1;
  const PhotonState psi = build_injection(inj, g, &site);
  CHECK(std::abs(psi.amplitudes(5) - complexd(1.0, 0.0)) < 1e-15);

  inj.amplitudes.assign(2 * 9, 0.0);  // wrong site count
  inj.amplitudes[0] = 1.0;
  CHECK_THROWS_AS(build_injection(inj, g, &site), ConfigError);
}

TEST_CASE("pgm writer normalizes to the figure maximum") {
  const LatticeGeometry g{2, 2};
  Eigen::VectorXd v(4);
  v << 0.0, 0.5, 1.0, 0.25;
  const fs::path dir = fresh_dir("pgm");
  io::write_pgm(dir / "t.pgm", v, g, 1);
  const std::string pgm = slurp(dir / "t.pgm");
  CHECK(pgm == "P2\n2 2\n65535\n0 32768\n65535 16384\n");
}
