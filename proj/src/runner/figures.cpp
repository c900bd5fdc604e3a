#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "entangle/runner.hpp"
#include "entangle/stats.hpp"

namespace entangle {

namespace {

constexpr double kNA = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kUnconditionedSamples = 1'000'000;
constexpr std::uint64_t kConditionedSamples = 100'000;
constexpr std::size_t kFixedRDeltaBins = 51;

struct Defaults {
  std::vector<std::string> gates;
  std::vector<Ensemble> ensembles;
  std::uint64_t samples;
  std::vector<std::string> bands;
  std::size_t bins = 0;
};

Defaults figure_defaults(FigureId fig) {
  switch (fig) {
  case FigureId::Fig1a:
    return {{}, {Ensemble::All, Ensemble::Pure}, kUnconditionedSamples, {}};
  case FigureId::Fig1b:
    return {{"cnot", "theta:pi/4"}, {Ensemble::All}, kConditionedSamples, {}};
  case FigureId::Fig2:
    return {{"cnot", "theta:pi/3", "theta:pi/4", "theta:pi/6", "theta:0"},
            {Ensemble::Pure, Ensemble::All},
            kUnconditionedSamples,
            {}};
  case FigureId::Fig3a:
    return {{"cnot", "theta:pi/4"}, {Ensemble::Pure}, kUnconditionedSamples, {}};
  case FigureId::Fig3b:
    return {{"cnot", "theta:pi/4"}, {Ensemble::All}, kUnconditionedSamples, {}};
  case FigureId::Fig4:
    return {{"cnot", "theta:pi/4"}, {Ensemble::Pure, Ensemble::All}, kUnconditionedSamples, {}};
  case FigureId::Fig5:
    return {{"cnot", "theta:pi/4"},
            {Ensemble::All},
            kConditionedSamples,
            {"E in [0.095,0.105]", "E in [0.195,0.205]", "E in [0.295,0.305]", "E in [0.395,0.405]"}};
  case FigureId::Fig6:
    return {{"cnot"},
            {Ensemble::All},
            kConditionedSamples,
            {"R in [1.39,1.41]", "R in [2.19,2.21]"},
            kFixedRDeltaBins};
  }
  throw ConfigError("figure_id", "unknown figure");
}

std::string display_label(const Gate& g) {
  switch (g.kind()) {
  case Gate::Kind::Cnot:
    return "CNOT";
  case Gate::Kind::Identity:
    return "identity";
  case Gate::Kind::Theta: {
    std::string s = g.label();
    if (s.rfind("theta:", 0) == 0) s = s.substr(6);
    for (std::size_t p = s.find("pi"); p != std::string::npos; p = s.find("pi", p))
      s.replace(p, 2, "π");
    return "θ = " + s;
  }
  case Gate::Kind::Custom:
    break;
  }
  return g.label();
}

std::string ensemble_label(Ensemble e) { return e == Ensemble::All ? "all states" : "pure states"; }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + v[i];
  return out;
}

std::int64_t as_count(std::uint64_t n) { return static_cast<std::int64_t>(n); }

SummaryRow moment_row(std::string name, const RunningMoments& m) {
  return {std::move(name), m.mean(), m.stderr_mean(), m.n};
}

SummaryRow flag_row(std::string name, bool flag, std::int64_t n) {
  return {std::move(name), flag ? 1.0 : 0.0, kNA, n};
}

SummaryRow rate_row(std::string name, std::uint64_t accepted, std::uint64_t attempts) {
  const double p = attempts ? static_cast<double>(accepted) / static_cast<double>(attempts) : 0.0;
  const double se = attempts ? std::sqrt(p * (1.0 - p) / static_cast<double>(attempts)) : kNA;
  return {std::move(name), p, se, as_count(attempts)};
}

/// Bin of the curve whose center is closest to x.
std::size_t nearest_bin(const BinAxis& axis, double x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < axis.bins; ++i)
    if (std::abs(axis.center(i) - x) < std::abs(axis.center(best) - x)) best = i;
  return best;
}

struct Resolved {
  std::vector<Gate> gates;
  std::vector<std::string> gate_specs;
  std::vector<Ensemble> ensembles;
  std::vector<Band> bands;
  std::vector<std::string> band_specs;
  ExperimentConfig base;
};

Resolved resolve(FigureId fig, const RunSettings& s) {
  const Defaults d = figure_defaults(fig);
  Resolved r;
  if (fig == FigureId::Fig1a && !s.gates.empty())
    throw ConfigError("gate", "fig1a samples ensembles only and takes no gates");
  r.gate_specs = s.gates.empty() ? d.gates : s.gates;
  for (const auto& g : r.gate_specs) {
    try {
      r.gates.push_back(parse_gate(g));
    } catch (const GateParseError& e) {
      throw ConfigError("gate", e.what());
    }
  }

  r.ensembles = s.ensemble ? std::vector<Ensemble>{*s.ensemble} : d.ensembles;

  const bool takes_bands = fig == FigureId::Fig5 || fig == FigureId::Fig6;
  if (!takes_bands && !s.bands.empty())
    throw ConfigError("band", std::string(to_string(fig)) + " takes no bands");
  r.band_specs = s.bands.empty() ? d.bands : s.bands;
  for (const auto& b : r.band_specs) {
    try {
      r.bands.push_back(parse_band(b));
    } catch (const BandParseError& e) {
      throw ConfigError("band", e.what());
    }
    if (fig == FigureId::Fig6 && !std::holds_alternative<ParticipationBand>(r.bands.back()))
      throw ConfigError("band", "fig6 needs R bands, got '" + b + "'");
  }

  if (s.samples && *s.samples == 0) throw ConfigError("samples", "sample count must be at least 1");
  r.base.samples = s.samples.value_or(d.samples);
  r.base.seed = s.seed.value_or(1);
  r.base.bins = s.bins.value_or(d.bins);
  r.base.max_attempts = s.max_attempts.value_or(kDefaultMaxAttempts);
  r.base.exec = s.streams ? Executor{*s.streams} : Executor::hardware();
  return r;
}

ExperimentConfig with(const Resolved& r, Ensemble e, std::vector<Gate> gates) {
  ExperimentConfig c = r.base;
  c.ensemble = e;
  c.gates = std::move(gates);
  return c;
}

void fig1a(const Resolved& r, FigureOutput& out) {
  out.plot.panels.push_back({"a", "P(E) for random two-qubit states", "E", "P(E)", std::nullopt, ""});
  for (Ensemble e : r.ensembles) {
    const auto res = entanglement_histogram(with(r, e, {}));
    const std::string file = fmt::format("P_E_{}.csv", to_string(e));
    out.csv_files.emplace_back(file, histogram_csv(res.histogram));
    out.summary.push_back(moment_row(fmt::format("mean_E_{}", to_string(e)), res.entanglement));
    out.plot.series.push_back({file, "density", ensemble_label(e), "a"});
  }
}

void fig1b(const Resolved& r, FigureOutput& out) {
  out.plot.panels.push_back(
      {"b", "P(E_F) from separable initial states", "E_F", "P(E_F)", std::nullopt, ""});
  for (Ensemble e : r.ensembles) {
    const auto res = gate_from_separable(with(r, e, r.gates));
    const std::string suffix = r.ensembles.size() > 1 ? "_" + std::string(to_string(e)) : "";
    for (const auto& gh : res.per_gate) {
      const std::string file = fmt::format("P_EF_from_E0_zero_{}{}.csv", gh.gate.slug(), suffix);
      out.csv_files.emplace_back(file, histogram_csv(gh.histogram));
      out.summary.push_back(
          moment_row(fmt::format("mean_EF_from_E0_zero_{}{}", gh.gate.slug(), suffix), gh.moments));
      out.plot.series.push_back({file, "density", display_label(gh.gate), "b"});
    }
    out.summary.push_back(
        rate_row(fmt::format("separable_acceptance_rate{}", suffix), res.accepted, res.attempts));
  }
}

void fig2(const Resolved& r, FigureOutput& out) {
  for (Ensemble e : r.ensembles) {
    const std::string ens(to_string(e));
    const auto res = mean_final_vs_initial(with(r, e, r.gates));
    out.plot.panels.push_back({ens, "<E_F> vs E_0, " + ensemble_label(e), "E_0", "<E_F>", std::nullopt, ""});
    const GateCurve* cnot = nullptr;
    const GateCurve* quarter = nullptr;
    for (const auto& gc : res.per_gate) {
      const std::string file = fmt::format("EF_vs_E0_{}_{}.csv", ens, gc.gate.slug());
      out.csv_files.emplace_back(file, curve_csv(gc.curve));
      out.plot.series.push_back({file, "mean", display_label(gc.gate), ens});
      const std::size_t top = gc.curve.axis().bins - 1;
      if (gc.curve.count(top) > 0)
        out.summary.push_back(
            moment_row(fmt::format("EF_top_bin_{}_{}", ens, gc.gate.slug()), gc.curve.moments(top)));
      if (gc.gate.kind() == Gate::Kind::Cnot) cnot = &gc;
      if (gc.gate.kind() == Gate::Kind::Theta && std::abs(gc.gate.theta() - M_PI / 4) < 1e-15)
        quarter = &gc;
    }
    out.summary.push_back(moment_row(fmt::format("mean_E0_{}", ens), res.entanglement));
    if (cnot && quarter) {
      const auto x = find_crossing(cnot->curve, quarter->curve);
      out.summary.push_back({fmt::format("crossing_E0_{}_{}_{}", ens, cnot->gate.slug(), quarter->gate.slug()),
                             x.value_or(kNA), kNA, res.entanglement.n});
    }
  }
}

void fig3(const Resolved& r, FigureOutput& out) {
  for (Ensemble e : r.ensembles) {
    const std::string ens(to_string(e));
    const auto res = delta_e_distribution(with(r, e, r.gates));
    out.plot.panels.push_back(
        {ens, "P(ΔE), " + ensemble_label(e), "ΔE", "P(ΔE)", std::nullopt, ""});
    const std::size_t zero = nearest_bin(res.reference.axis(), 0.0);
    for (const auto& gh : res.per_gate) {
      const std::string file = fmt::format("P_dE_{}_{}.csv", ens, gh.gate.slug());
      out.csv_files.emplace_back(file, histogram_csv(gh.histogram));
      out.plot.series.push_back({file, "density", display_label(gh.gate), ens});
      out.summary.push_back(moment_row(fmt::format("mean_dE_{}_{}", ens, gh.gate.slug()), gh.moments));
      out.summary.push_back({fmt::format("mass_dE_zero_bin_{}_{}", ens, gh.gate.slug()),
                             gh.histogram.mass(zero), kNA, gh.histogram.total()});
    }
    const std::string ref = fmt::format("P_dE_{}_reference.csv", ens);
    out.csv_files.emplace_back(ref, histogram_csv(res.reference));
    out.plot.series.push_back({ref, "density", "random reference", ens});
    out.summary.push_back({fmt::format("reference_skewness_{}", ens), res.reference_moments.skewness(), kNA,
                           res.reference_moments.n});
  }
}

void fig4(const Resolved& r, FigureOutput& out) {
  for (Ensemble e : r.ensembles) {
    const std::string ens(to_string(e));
    const auto res = initial_stats_vs_delta(with(r, e, r.gates));
    out.plot.panels.push_back({ens + "_mean", "<E_0> vs ΔE, " + ensemble_label(e), "ΔE", "<E_0>", std::nullopt, ""});
    out.plot.panels.push_back({ens + "_var", "<E_0^2> - <E_0>^2 vs ΔE, " + ensemble_label(e), "ΔE",
                               "<E_0^2> - <E_0>^2", std::nullopt, ""});
    for (const auto& gc : res.per_gate) {
      const std::string file = fmt::format("E0_vs_dE_{}_{}.csv", ens, gc.gate.slug());
      out.csv_files.emplace_back(file, curve_csv(gc.curve));
      out.plot.series.push_back({file, "mean", display_label(gc.gate), ens + "_mean"});
      out.plot.series.push_back({file, "variance", display_label(gc.gate), ens + "_var"});
      const std::size_t zero = nearest_bin(gc.curve.axis(), 0.0);
      const auto var0 = gc.curve.variance(zero);
      out.summary.push_back({fmt::format("variance_E0_at_dE_zero_{}_{}", ens, gc.gate.slug()),
                             var0.value_or(kNA), kNA, gc.curve.count(zero)});
      out.summary.push_back(flag_row(fmt::format("variance_local_min_at_dE_zero_{}_{}", ens, gc.gate.slug()),
                                     variance_local_min(gc.curve, zero), gc.curve.count(zero)));
    }
  }
}

void fig5(const Resolved& r, FigureOutput& out) {
  for (Ensemble e : r.ensembles) {
    ExperimentConfig c = with(r, e, r.gates);
    c.bands = r.bands;
    const auto res = final_dist_fixed_initial(c);
    const std::string suffix = r.ensembles.size() > 1 ? "_" + std::string(to_string(e)) : "";
    for (const auto& g : r.gates) {
      const std::string panel = g.slug() + suffix;
      out.plot.panels.push_back({panel, "P(E_F) at fixed E_0, " + display_label(g) + ", " + ensemble_label(e),
                                 "E_F", "P(E_F)", std::nullopt, ""});
    }
    for (std::size_t k = 0; k < res.size(); ++k) {
      const auto& bh = res[k];
      const std::string slug = band_slug(bh.band);
      for (const auto& gh : bh.per_gate) {
        const std::string file = fmt::format("P_EF_{}_{}{}.csv", slug, gh.gate.slug(), suffix);
        out.csv_files.emplace_back(file, histogram_csv(gh.histogram));
        out.plot.series.push_back({file, "density", to_string(bh.band), gh.gate.slug() + suffix});
        out.summary.push_back(moment_row(fmt::format("mean_EF_{}_{}{}", slug, gh.gate.slug(), suffix), gh.moments));
      }
      out.summary.push_back(rate_row(fmt::format("acceptance_rate_{}{}", slug, suffix), bh.accepted, bh.attempts));
    }
  }
}

void fig6(const Resolved& r, FigureOutput& out) {
  out.plot.panels.push_back({"mean", "<E_0> vs ΔE at fixed R", "ΔE", "<E_0>", std::nullopt, ""});
  out.plot.panels.push_back({"var", "<E_0^2> - <E_0>^2 vs ΔE at fixed R", "ΔE", "<E_0^2> - <E_0>^2", std::nullopt, ""});
  for (const auto& band : r.bands) {
    const std::string slug = band_slug(band);
    const auto res = initial_stats_vs_delta_at_fixed_R(with(r, Ensemble::All, r.gates), band);
    for (const auto& gc : res.per_gate) {
      const std::string file = fmt::format("E0_vs_dE_{}_{}.csv", slug, gc.gate.slug());
      const std::string label = display_label(gc.gate) + ", " + to_string(band);
      out.csv_files.emplace_back(file, curve_csv(gc.curve));
      out.plot.series.push_back({file, "mean", label, "mean"});
      out.plot.series.push_back({file, "variance", label, "var"});
      double best = kNA;
      for (std::size_t i = 0; i < gc.curve.axis().bins; ++i)
        if (const auto m = gc.curve.mean(i); m && !(best >= *m)) best = *m;
      out.summary.push_back({fmt::format("max_mean_E0_{}_{}", slug, gc.gate.slug()), best, kNA,
                             as_count(res.accepted)});
      const std::size_t zero = nearest_bin(gc.curve.axis(), 0.0);
      out.summary.push_back(flag_row(fmt::format("variance_local_max_at_dE_zero_{}_{}", slug, gc.gate.slug()),
                                     variance_local_max(gc.curve, zero), gc.curve.count(zero)));
    }
    out.summary.push_back(rate_row(fmt::format("acceptance_rate_{}", slug), res.accepted, res.attempts));
  }
}

} // namespace

FigureOutput compute_figure(FigureId fig, const RunSettings& settings) {
  const Resolved r = resolve(fig, settings);
  FigureOutput out;
  out.figure = fig;

  std::vector<std::string> ensembles;
  for (Ensemble e : r.ensembles) ensembles.emplace_back(to_string(e));
  out.config_echo = {
      {"figure", std::string(to_string(fig))},
      {"gates", join(r.gate_specs)},
      {"ensembles", join(ensembles)},
      {"samples", std::to_string(r.base.samples)},
      {"seed", std::to_string(r.base.seed)},
      {"streams", std::to_string(r.base.exec.threads)},
      {"bins", r.base.bins ? std::to_string(r.base.bins) : "default"},
      {"bands", join(r.band_specs)},
      {"max_attempts", std::to_string(r.base.max_attempts)},
  };

  switch (fig) {
  case FigureId::Fig1a:
    fig1a(r, out);
    break;
  case FigureId::Fig1b:
    fig1b(r, out);
    break;
  case FigureId::Fig2:
    fig2(r, out);
    break;
  case FigureId::Fig3a:
  case FigureId::Fig3b:
    fig3(r, out);
    break;
  case FigureId::Fig4:
    fig4(r, out);
    break;
  case FigureId::Fig5:
    fig5(r, out);
    break;
  case FigureId::Fig6:
    fig6(r, out);
    break;
  }
  return out;
}

} // namespace entangle
