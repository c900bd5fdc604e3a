#pragma once

// Command-line runner: figure drivers, CSV and manifest output, plot
// scripts and single-state inspection.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entangle/experiments.hpp"

namespace entangle {

/// Exit codes of the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitRejection = 3,
  kExitInvariant = 4,
};

/// Bad configuration; `key` names the offending setting.
class ConfigError : public Error {
public:
  ConfigError(std::string key, const std::string& what);
  std::string key;
};

class IoError : public Error {
public:
  using Error::Error;
};

enum class FigureId { Fig1a, Fig1b, Fig2, Fig3a, Fig3b, Fig4, Fig5, Fig6 };
FigureId parse_figure_id(std::string_view s);
std::string_view to_string(FigureId f);

/// Settings for one `run`. Unset fields take per-figure defaults.
struct RunSettings {
  std::vector<std::string> gates;
  std::optional<Ensemble> ensemble;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> streams;
  std::optional<std::size_t> bins;
  std::vector<std::string> bands;
  std::optional<std::string> out;
  std::optional<std::uint64_t> max_attempts;
};

/// Parses and stores one key=value setting; throws ConfigError naming `key`.
/// Repeated `gate` and `band` keys accumulate.
void apply_setting(RunSettings& s, std::string_view key, std::string_view value);

/// Flat key=value file, '#' comments, blank lines ignored.
RunSettings load_config_file(const std::filesystem::path& path);

/// Fields set in `flags` replace those in `base`.
RunSettings merge_settings(RunSettings base, const RunSettings& flags);

/// Output directory: explicit setting, else $ENTANGLE_MC_OUT, else "entangle_out".
std::filesystem::path output_root(const RunSettings& s);

// --- output files -----------------------------------------------------------

struct SummaryRow {
  std::string name;
  double value;
  double stderr_value; // NaN is written as NA
  std::int64_t n;
};

std::string histogram_csv(const Histogram& h);
std::string curve_csv(const ConditionalCurve& c);
std::string summary_csv(const std::vector<SummaryRow>& rows);
/// Shortest round-trip decimal form.
std::string format_number(double x);

/// One line of a plot: column `y` ("density", "mean" or "variance") of `file`.
struct PlotSeries {
  std::string file;
  std::string y;
  std::string label;
  std::string panel;
};

struct PlotPanel {
  std::string id;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  /// Optional constant reference line drawn as y = value.
  std::optional<double> hline;
  std::string hline_label;
};

struct PlotSpec {
  std::vector<PlotPanel> panels;
  std::vector<PlotSeries> series;
};

/// gnuplot script that reads the CSVs in `dir`. Throws ConfigError (exit 2)
/// naming the first CSV that is missing.
std::string plot_script(FigureId fig, const PlotSpec& spec, const std::filesystem::path& dir);
/// Same script without the existence check.
std::string plot_script_text(FigureId fig, const PlotSpec& spec);

/// Everything a figure run produces, kept in memory until written.
struct FigureOutput {
  FigureId figure;
  std::vector<std::pair<std::string, std::string>> csv_files; // name, content
  std::vector<SummaryRow> summary;
  PlotSpec plot;
  std::map<std::string, std::string> config_echo;
};

/// Runs the estimators behind one figure.
FigureOutput compute_figure(FigureId fig, const RunSettings& settings);

struct RunResult {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;
  double wall_seconds = 0.0;
};

/// compute_figure + atomic write of CSVs, summary, plot script and
/// manifest into <out>/<figure>/.
RunResult run_figure(FigureId fig, const RunSettings& settings);

/// Re-emits the plot script of a finished run from its manifest.
std::filesystem::path emit_plot_script(FigureId fig, const std::filesystem::path& dir);

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// --- inspect ----------------------------------------------------------------

struct InspectReport {
  DensityMatrix state;
  double entanglement;
  double concurrence;
  double participation_ratio;
  double von_neumann_entropy;
  double omega2;
  double omega3;
  bool ppt;
  double min_pt_eigenvalue;
  DeltaE cnot;
  DeltaE theta_pi_4;

  std::string format() const;
};

InspectReport inspect_state(const DensityMatrix& rho);
/// source: a state file path, "random-pure" or "random-mixed".
DensityMatrix load_state_source(std::string_view source, std::uint64_t seed);

/// Full CLI; returns the process exit code.
int cli_main(int argc, char** argv);

std::string_view version_string();

} // namespace entangle
