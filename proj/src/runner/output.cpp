#include <chrono>
#include <cmath>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "entangle/runner.hpp"
#include "json.hpp"

namespace entangle {

using nlohmann::json;

std::string format_number(double x) { return fmt::format("{}", x); }

namespace {

std::string format_edge(double x) {
  // Bin edges are computed, so trim the last-digit noise.
  std::string s = fmt::format("{:.10g}", x);
  return s == "-0" ? "0" : s;
}

std::string optional_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string("NA");
}

json plot_to_json(const PlotSpec& p) {
  json panels = json::array();
  for (const auto& pn : p.panels) {
    json j = {{"id", pn.id}, {"title", pn.title}, {"xlabel", pn.xlabel}, {"ylabel", pn.ylabel}};
    if (pn.hline) {
      j["hline"] = *pn.hline;
      j["hline_label"] = pn.hline_label;
    }
    panels.push_back(j);
  }
  json series = json::array();
  for (const auto& s : p.series)
    series.push_back({{"file", s.file}, {"y", s.y}, {"label", s.label}, {"panel", s.panel}});
  return {{"panels", panels}, {"series", series}};
}

PlotSpec plot_from_json(const json& j) {
  PlotSpec p;
  for (const auto& pn : j.at("panels")) {
    PlotPanel panel{pn.at("id"), pn.at("title"), pn.at("xlabel"), pn.at("ylabel"), std::nullopt, ""};
    if (pn.contains("hline")) {
      panel.hline = pn.at("hline").get<double>();
      panel.hline_label = pn.value("hline_label", "");
    }
    p.panels.push_back(panel);
  }
  for (const auto& s : j.at("series"))
    p.series.push_back({s.at("file"), s.at("y"), s.at("label"), s.at("panel")});
  return p;
}

} // namespace

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_lo,bin_hi,count,density\n";
  const auto density = h.density();
  for (std::size_t i = 0; i < h.axis().bins; ++i)
    out += fmt::format("{},{},{},{}\n", format_edge(h.axis().lower(i)), format_edge(h.axis().upper(i)),
                       h.counts()[i], format_number(density[i]));
  return out;
}

std::string curve_csv(const ConditionalCurve& c) {
  std::string out = "bin_center,count,mean,second_moment,variance\n";
  for (std::size_t i = 0; i < c.axis().bins; ++i)
    out += fmt::format("{},{},{},{},{}\n", format_edge(c.axis().center(i)), c.count(i),
                       optional_number(c.mean(i)), optional_number(c.second_moment(i)),
                       optional_number(c.variance(i)));
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "name,value,stderr,n\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{}\n", r.name, format_number(r.value),
                       std::isfinite(r.stderr_value) ? format_number(r.stderr_value) : "NA", r.n);
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::random_device rd;
  const auto tmp = path.parent_path() / fmt::format(".{}.tmp{:08x}", path.filename().string(), rd());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

RunResult run_figure(FigureId fig, const RunSettings& settings) {
  const auto t0 = std::chrono::steady_clock::now();
  FigureOutput out = compute_figure(fig, settings);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunResult result;
  result.directory = output_root(settings) / std::string(to_string(fig));
  std::error_code ec;
  std::filesystem::create_directories(result.directory, ec);
  if (ec) throw IoError("cannot create output directory " + result.directory.string());

  std::vector<std::pair<std::string, std::string>> files = out.csv_files;
  files.emplace_back("summary.csv", summary_csv(out.summary));

  // Everything that can fail on bad input has already happened in
  // compute_figure; from here on only I/O errors are possible.
  const std::string script = plot_script_text(fig, out.plot);
  json manifest;
  manifest["figure"] = std::string(to_string(fig));
  manifest["config"] = out.config_echo;
  manifest["seed"] = out.config_echo.at("seed");
  manifest["streams"] = out.config_echo.at("streams");
  json outputs = json::array();
  for (const auto& [name, content] : files) outputs.push_back(name);
  const std::string script_name = std::string(to_string(fig)) + ".gp";
  outputs.push_back(script_name);
  manifest["outputs"] = outputs;
  manifest["plot"] = plot_to_json(out.plot);
  manifest["wall_time_seconds"] = wall;
  manifest["version"] = std::string(version_string());

  for (const auto& [name, content] : files) {
    write_file_atomic(result.directory / name, content);
    result.files.push_back(result.directory / name);
  }
  write_file_atomic(result.directory / script_name, script);
  result.files.push_back(result.directory / script_name);
  write_file_atomic(result.directory / "manifest.json", manifest.dump(2) + "\n");
  result.files.push_back(result.directory / "manifest.json");
  result.wall_seconds = wall;
  return result;
}

std::filesystem::path emit_plot_script(FigureId fig, const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("plot", "missing manifest " + manifest_path.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw ConfigError("plot", "unreadable manifest " + manifest_path.string() + ": " + e.what());
  }
  if (manifest.value("figure", "") != to_string(fig))
    throw ConfigError("plot", "manifest in " + dir.string() + " is for figure '" +
                                  manifest.value("figure", "") + "'");
  PlotSpec spec;
  try {
    spec = plot_from_json(manifest.at("plot"));
  } catch (const json::exception& e) {
    throw ConfigError("plot", std::string("malformed plot section: ") + e.what());
  }
  const auto path = dir / (std::string(to_string(fig)) + ".gp");
  write_file_atomic(path, plot_script(fig, spec, dir));
  return path;
}

} // namespace entangle
