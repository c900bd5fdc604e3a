#include <algorithm>
#include <filesystem>

#include <fmt/format.h>

#include "entangle/runner.hpp"

namespace entangle {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string using_clause(const std::string& y) {
  if (y == "density") return "(($1+$2)/2):4";
  if (y == "mean") return "1:3";
  if (y == "variance") return "1:5";
  if (y == "second_moment") return "1:4";
  throw ConfigError("plot", "unknown plot column '" + y + "'");
}

} // namespace

std::string plot_script_text(FigureId fig, const PlotSpec& spec) {
  const std::string name(to_string(fig));
  const std::size_t n = std::max<std::size_t>(spec.panels.size(), 1);
  const std::size_t cols = n == 1 ? 1 : 2;
  const std::size_t rows = (n + cols - 1) / cols;

  std::string s;
  s += fmt::format("# gnuplot script for {}; run from this directory: gnuplot {}.gp\n", name, name);
  s += "set datafile separator \",\"\n";
  s += "set datafile missing \"NA\"\n";
  s += fmt::format("set terminal pngcairo enhanced size {},{}\n", 640 * cols, 480 * rows);
  s += fmt::format("set output {}\n", quoted(name + ".png"));
  s += "set key top right\n";
  s += "set grid\n";
  if (n > 1) s += fmt::format("set multiplot layout {},{}\n", rows, cols);

  for (const auto& panel : spec.panels) {
    s += fmt::format("\n# panel {}\n", panel.id);
    s += fmt::format("set title {}\n", quoted(panel.title));
    s += fmt::format("set xlabel {}\n", quoted(panel.xlabel));
    s += fmt::format("set ylabel {}\n", quoted(panel.ylabel));
    std::vector<std::string> items;
    for (const auto& series : spec.series) {
      if (series.panel != panel.id) continue;
      // `every ::1` skips the CSV header row.
      items.push_back(fmt::format("{} every ::1 using {} with lines title {}", quoted(series.file),
                                  using_clause(series.y), quoted(series.label)));
    }
    if (panel.hline)
      items.push_back(fmt::format("{} with lines dashtype 2 title {}", format_number(*panel.hline),
                                  quoted(panel.hline_label)));
    if (items.empty()) continue;
    s += "plot ";
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (k) s += ", \\\n     ";
      s += items[k];
    }
    s += "\n";
  }
  if (n > 1) s += "\nunset multiplot\n";
  return s;
}

std::string plot_script(FigureId fig, const PlotSpec& spec, const std::filesystem::path& dir) {
  for (const auto& series : spec.series) {
    const auto path = dir / series.file;
    if (!std::filesystem::exists(path)) throw ConfigError("plot", "missing CSV " + path.string());
  }
  return plot_script_text(fig, spec);
}

} // namespace entangle
