#include <cstdio>
#include <fstream>
#include <iostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "entangle/runner.hpp"

namespace entangle {

namespace {

struct RunFlags {
  std::string figure;
  std::vector<std::string> gates;
  std::vector<std::string> bands;
  std::string ensemble, samples, seed, streams, bins, out, max_attempts, config;
};

RunSettings settings_from_flags(const RunFlags& f) {
  RunSettings flags;
  for (const auto& g : f.gates) apply_setting(flags, "gate", g);
  for (const auto& b : f.bands) apply_setting(flags, "band", b);
  const std::pair<const char*, const std::string*> scalars[] = {
      {"ensemble", &f.ensemble}, {"samples", &f.samples}, {"seed", &f.seed},
      {"streams", &f.streams},   {"bins", &f.bins},       {"out", &f.out},
      {"max_attempts", &f.max_attempts},
  };
  for (const auto& [key, value] : scalars)
    if (!value->empty()) apply_setting(flags, key, *value);
  if (f.config.empty()) return flags;
  return merge_settings(load_config_file(f.config), flags);
}

int do_run(const RunFlags& f) {
  const FigureId fig = parse_figure_id(f.figure);
  const RunResult r = run_figure(fig, settings_from_flags(f));
  fmt::print("wrote {} files to {} in {:.2f} s\n", r.files.size(), r.directory.string(), r.wall_seconds);
  std::ifstream summary(r.directory / "summary.csv");
  std::cout << summary.rdbuf();
  return kExitOk;
}

int do_inspect(const std::string& source, std::uint64_t seed, const std::string& dump) {
  const DensityMatrix rho = load_state_source(source, seed);
  if (!dump.empty()) write_file_atomic(dump, serialize(rho) + "\n");
  std::cout << inspect_state(rho).format();
  return kExitOk;
}

int do_plot(const std::string& figure, const std::string& dir) {
  const FigureId fig = parse_figure_id(figure);
  std::filesystem::path d = dir;
  if (d.empty()) d = output_root(RunSettings{}) / std::string(to_string(fig));
  fmt::print("{}\n", emit_plot_script(fig, d).string());
  return kExitOk;
}

int fail(int code, const std::exception& e) {
  fmt::print(stderr, "error: {}\n", e.what());
  return code;
}

} // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Monte Carlo study of gate-induced entanglement change on two qubits", "entangle_mc"};
  app.set_version_flag("--version", std::string(version_string()));
  app.require_subcommand(1);

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Run the estimators behind one figure and write CSVs");
  run->add_option("figure", rf.figure, "fig1a, fig1b, fig2, fig3a, fig3b, fig4, fig5 or fig6")->required();
  run->add_option("--gate", rf.gates, "cnot, identity, theta:<angle> (repeatable)");
  run->add_option("--ensemble", rf.ensemble, "pure or all");
  run->add_option("--samples", rf.samples, "samples, or accepted samples for conditioned runs");
  run->add_option("--seed", rf.seed, "master seed");
  run->add_option("--streams", rf.streams, "worker threads (default: logical cores, max 64)");
  run->add_option("--bins", rf.bins, "bins on the main axis");
  run->add_option("--band", rf.bands, "'E=0', 'E in [a,b]' or 'R in [a,b]' (repeatable)");
  run->add_option("--out", rf.out, "output root (default $ENTANGLE_MC_OUT or entangle_out)");
  run->add_option("--max-attempts", rf.max_attempts, "rejection cap per accepted sample");
  run->add_option("--config", rf.config, "key=value file; flags override it");

  std::string source, dump;
  std::uint64_t seed = 1;
  auto* inspect = app.add_subcommand("inspect", "Print measures of one state");
  inspect->add_option("source", source, "state file, random-pure or random-mixed")->required();
  inspect->add_option("--seed", seed, "seed for random sources");
  inspect->add_option("--dump", dump, "write the state to this file");

  std::string plot_fig, plot_dir;
  auto* plot = app.add_subcommand("plot", "Re-emit the gnuplot script of a finished run");
  plot->add_option("figure", plot_fig, "figure id")->required();
  plot->add_option("--dir", plot_dir, "run directory (default <out>/<figure>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return do_run(rf);
    if (*inspect) return do_inspect(source, seed, dump);
    if (*plot) return do_plot(plot_fig, plot_dir);
  } catch (const ConfigError& e) {
    return fail(kExitConfig, e);
  } catch (const GateParseError& e) {
    return fail(kExitConfig, e);
  } catch (const BandParseError& e) {
    return fail(kExitConfig, e);
  } catch (const StateParseError& e) {
    return fail(kExitConfig, e);
  } catch (const InvalidState& e) {
    return fail(kExitConfig, e);
  } catch (const NotNormalized& e) {
    return fail(kExitConfig, e);
  } catch (const RejectionBudgetExceeded& e) {
    return fail(kExitRejection, e);
  } catch (const IoError& e) {
    return fail(kExitIo, e);
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitIo, e);
  } catch (const std::exception& e) {
    // InvariantViolation and anything else unexpected.
    return fail(kExitInvariant, e);
  }
  return kExitConfig;
}

} // namespace entangle
