#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "entangle/runner.hpp"

namespace entangle {

ConfigError::ConfigError(std::string k, const std::string& what)
    : Error("config error in '" + k + "': " + what), key(std::move(k)) {}

std::string_view version_string() { return ENTANGLE_VERSION; }

namespace {

constexpr std::pair<std::string_view, FigureId> kFigures[] = {
    {"fig1a", FigureId::Fig1a}, {"fig1b", FigureId::Fig1b}, {"fig2", FigureId::Fig2},
    {"fig3a", FigureId::Fig3a}, {"fig3b", FigureId::Fig3b}, {"fig4", FigureId::Fig4},
    {"fig5", FigureId::Fig5},   {"fig6", FigureId::Fig6},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view v) {
  v = trim(v);
  std::uint64_t x = 0;
  // Accept 1e6-style counts as well as plain integers.
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec == std::errc() && res.ptr == v.data() + v.size()) return x;
  double d = 0.0;
  auto rd = std::from_chars(v.data(), v.data() + v.size(), d);
  if (rd.ec == std::errc() && rd.ptr == v.data() + v.size() && d >= 0.0 && d < 1.8e19 &&
      d == static_cast<double>(static_cast<std::uint64_t>(d)))
    return static_cast<std::uint64_t>(d);
  throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(v) + "'");
}

} // namespace

FigureId parse_figure_id(std::string_view s) {
  for (const auto& [name, id] : kFigures)
    if (name == s) return id;
  throw ConfigError("figure_id", "unknown figure '" + std::string(s) +
                                     "' (expected fig1a, fig1b, fig2, fig3a, fig3b, fig4, fig5, fig6)");
}

std::string_view to_string(FigureId f) {
  for (const auto& [name, id] : kFigures)
    if (id == f) return name;
  return "unknown";
}

void apply_setting(RunSettings& s, std::string_view key, std::string_view raw) {
  const std::string k(trim(key));
  const std::string_view v = trim(raw);
  if (k == "gate") {
    try {
      (void)parse_gate(v);
    } catch (const GateParseError& e) {
      throw ConfigError(k, e.what());
    }
    s.gates.emplace_back(v);
  } else if (k == "ensemble") {
    if (v == "pure")
      s.ensemble = Ensemble::Pure;
    else if (v == "all")
      s.ensemble = Ensemble::All;
    else
      throw ConfigError(k, "expected pure or all, got '" + std::string(v) + "'");
  } else if (k == "samples") {
    const auto n = parse_unsigned(k, v);
    if (n == 0) throw ConfigError(k, "sample count must be at least 1");
    s.samples = n;
  } else if (k == "seed") {
    s.seed = parse_unsigned(k, v);
  } else if (k == "streams") {
    const auto n = parse_unsigned(k, v);
    if (n == 0 || n > 1024) throw ConfigError(k, "stream count must be in [1, 1024]");
    s.streams = static_cast<int>(n);
  } else if (k == "bins") {
    const auto n = parse_unsigned(k, v);
    if (n < 2 || n > 100000) throw ConfigError(k, "bin count must be in [2, 100000]");
    s.bins = static_cast<std::size_t>(n);
  } else if (k == "band") {
    try {
      (void)parse_band(v);
    } catch (const BandParseError& e) {
      throw ConfigError(k, e.what());
    }
    s.bands.emplace_back(v);
  } else if (k == "out") {
    if (v.empty()) throw ConfigError(k, "empty output directory");
    s.out = std::string(v);
  } else if (k == "max_attempts" || k == "max-attempts") {
    const auto n = parse_unsigned(k, v);
    if (n == 0) throw ConfigError(k, "attempt cap must be at least 1");
    s.max_attempts = n;
  } else {
    throw ConfigError(k, "unknown key");
  }
}

RunSettings load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open config file " + path.string());
  RunSettings s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config", path.string() + ":" + std::to_string(line_no) +
                                      ": expected key=value");
    apply_setting(s, l.substr(0, eq), l.substr(eq + 1));
  }
  return s;
}

RunSettings merge_settings(RunSettings base, const RunSettings& flags) {
  if (!flags.gates.empty()) base.gates = flags.gates;
  if (flags.ensemble) base.ensemble = flags.ensemble;
  if (flags.samples) base.samples = flags.samples;
  if (flags.seed) base.seed = flags.seed;
  if (flags.streams) base.streams = flags.streams;
  if (flags.bins) base.bins = flags.bins;
  if (!flags.bands.empty()) base.bands = flags.bands;
  if (flags.out) base.out = flags.out;
  if (flags.max_attempts) base.max_attempts = flags.max_attempts;
  return base;
}

std::filesystem::path output_root(const RunSettings& s) {
  if (s.out) return *s.out;
  if (const char* env = std::getenv("ENTANGLE_MC_OUT"); env && *env) return env;
  return "entangle_out";
}

} // namespace entangle
