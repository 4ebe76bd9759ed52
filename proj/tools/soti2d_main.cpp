// soti2d: 2D extended-SSH photonic lattice toolkit.
// Subcommands cover band structure, topological invariants, finite spectra,
// single-photon evolution, disorder ensembles, the 1x4 coupler, entanglement
// sweeps, and prepackaged reproduction runs.

#include <cstdio>
#include <filesystem>

#include "CLI11.hpp"
#include "soti/experiments.hpp"
#include "soti/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::string format;
};

soti::ExperimentConfig make_config(const GlobalArgs& args) {
  soti::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = soti::load_config(args.config_path);
  if (args.seed_set) {
    if (!cfg.lattice.disorder) cfg.lattice.disorder = soti::DisorderSpec{0.0, args.seed, 1};
    cfg.lattice.disorder->seed = args.seed;
  }
  if (!args.format.empty()) cfg.output.format = args.format;
  cfg.validate();
  return cfg;
}

void add_common_flags(CLI::App* cmd, GlobalArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config (JSON)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the disorder seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "worker threads for ensembles")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", args.format, "data table format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D extended-SSH photonic lattice toolkit"};
  app.require_subcommand(1);

  GlobalArgs args;
  std::string figure_id;

  CLI::App* bands = app.add_subcommand("bands", "band structure and gap report");
  CLI::App* invariants = app.add_subcommand("invariants", "topological indices and polarization");
  CLI::App* spectrum = app.add_subcommand("spectrum", "finite-lattice spectrum and densities");
  CLI::App* evolve = app.add_subcommand("evolve", "single-photon evolution");
  CLI::App* disorder = app.add_subcommand("disorder-sweep", "disorder ensemble statistics");
  CLI::App* coupler = app.add_subcommand("coupler", "print the 1x4 coupler unitary");
  CLI::App* entangle = app.add_subcommand("entangle", "entanglement-preservation sweep");
  CLI::App* reproduce = app.add_subcommand("reproduce", "all artifacts for one study figure");
  reproduce->add_option("figure", figure_id, "figure id (fig1, fig2, fig3, fig4, robustness, entangle)")
      ->required();
  for (CLI::App* cmd : {bands, invariants, spectrum, evolve, disorder, coupler, entangle, reproduce})
    add_common_flags(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const soti::CommandOptions opt{std::filesystem::path(args.out_dir), args.threads};
    if (reproduce->parsed()) {
      soti::cmd_reproduce(figure_id, opt);
      return kExitOk;
    }
    const soti::ExperimentConfig cfg = make_config(args);
    if (bands->parsed()) soti::cmd_bands(cfg, opt);
    if (invariants->parsed()) soti::cmd_invariants(cfg, opt);
    if (spectrum->parsed()) soti::cmd_spectrum(cfg, opt);
    if (evolve->parsed()) soti::cmd_evolve(cfg, opt);
    if (disorder->parsed()) soti::cmd_disorder_sweep(cfg, opt);
    if (coupler->parsed()) soti::cmd_coupler(cfg, opt);
    if (entangle->parsed()) soti::cmd_entangle(cfg, opt);
    return kExitOk;
  } catch (const soti::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const soti::SpecError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const soti::NumericalError& e) {
    std::fprintf(stderr, "numerical validation failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
