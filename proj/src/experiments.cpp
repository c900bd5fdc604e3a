#include "entangle/experiments.hpp"

#include <algorithm>

namespace entangle {

namespace {

enum Tag : std::uint32_t {
  kTagHistogram = 1,
  kTagSeparable = 2,
  kTagFinalVsInitial = 3,
  kTagDelta = 4,
  kTagDeltaReference = 5,
  kTagInitialVsDelta = 6,
  kTagFixedR = 7,
  kTagInvarianceBefore = 8,
  kTagInvarianceAfter = 9,
  kTagFixedInitialBase = 100,
};

std::vector<GateHistogram> gate_histograms(const std::vector<Gate>& gates, const BinAxis& axis) {
  std::vector<GateHistogram> out;
  out.reserve(gates.size());
  for (const auto& g : gates) out.push_back({g, Histogram(axis), {}});
  return out;
}

std::vector<GateCurve> gate_curves(const std::vector<Gate>& gates, const BinAxis& axis) {
  std::vector<GateCurve> out;
  out.reserve(gates.size());
  for (const auto& g : gates) out.push_back({g, ConditionalCurve(axis)});
  return out;
}

void merge_gate_histograms(std::vector<GateHistogram>& into, const std::vector<GateHistogram>& from) {
  for (std::size_t g = 0; g < into.size(); ++g) {
    into[g].histogram.merge(from[g].histogram);
    into[g].moments.merge(from[g].moments);
  }
}

void merge_gate_curves(std::vector<GateCurve>& into, const std::vector<GateCurve>& from) {
  for (std::size_t g = 0; g < into.size(); ++g) into[g].curve.merge(from[g].curve);
}

void require_samples(const ExperimentConfig& cfg) {
  if (cfg.samples == 0) throw Error("sample count must be at least 1");
}

} // namespace

Executor Executor::hardware() { return {std::clamp(omp_get_num_procs(), 1, 64)}; }

BinAxis ExperimentConfig::entanglement_axis() const {
  return BinAxis::unit(bins ? bins : kDefaultEntanglementBins);
}

BinAxis ExperimentConfig::delta_axis() const {
  return BinAxis::centered_delta(bins ? bins : kDefaultDeltaBins);
}

EntanglementHistogramResult entanglement_histogram(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.gates.clear();
  const BinAxis axis = cfg.entanglement_axis();
  struct Acc {
    EntanglementHistogramResult r;
    void merge(const Acc& o) {
      r.histogram.merge(o.r.histogram);
      r.entanglement.merge(o.r.entanglement);
    }
  };
  auto acc = survey<Acc>(
      c, std::nullopt, kTagHistogram, [&] { return Acc{{Histogram(axis), {}}}; },
      [](Acc& a, const SlotObservation& obs) {
        a.r.histogram.add(obs.e_initial);
        a.r.entanglement.add(obs.e_initial);
      });
  return std::move(acc.r);
}

double SeparableGateResult::acceptance_rate() const {
  return attempts ? static_cast<double>(accepted) / static_cast<double>(attempts) : 0.0;
}

SeparableGateResult gate_from_separable(const ExperimentConfig& cfg) {
  require_samples(cfg);
  const BinAxis axis = cfg.entanglement_axis();
  struct Acc {
    SeparableGateResult r;
    void merge(const Acc& o) {
      merge_gate_histograms(r.per_gate, o.r.per_gate);
      r.accepted += o.r.accepted;
      r.attempts += o.r.attempts;
    }
  };
  auto acc = survey<Acc>(
      cfg, Band{SeparableBand{}}, kTagSeparable,
      [&] { return Acc{{gate_histograms(cfg.gates, axis), 0, 0}}; },
      [](Acc& a, const SlotObservation& obs) {
        for (std::size_t g = 0; g < obs.e_final.size(); ++g) {
          a.r.per_gate[g].histogram.add(obs.e_final[g]);
          a.r.per_gate[g].moments.add(obs.e_final[g]);
        }
        ++a.r.accepted;
        a.r.attempts += obs.attempts;
      });
  return std::move(acc.r);
}

FinalVsInitialResult mean_final_vs_initial(const ExperimentConfig& cfg) {
  require_samples(cfg);
  const BinAxis axis = cfg.entanglement_axis();
  struct Acc {
    FinalVsInitialResult r;
    void merge(const Acc& o) {
      merge_gate_curves(r.per_gate, o.r.per_gate);
      r.initial.merge(o.r.initial);
      r.entanglement.merge(o.r.entanglement);
    }
  };
  auto acc = survey<Acc>(
      cfg, std::nullopt, kTagFinalVsInitial,
      [&] { return Acc{{gate_curves(cfg.gates, axis), ConditionalCurve(axis), {}}}; },
      [](Acc& a, const SlotObservation& obs) {
        for (std::size_t g = 0; g < obs.e_final.size(); ++g)
          a.r.per_gate[g].curve.add(obs.e_initial, obs.e_final[g]);
        a.r.initial.add(obs.e_initial, obs.e_initial);
        a.r.entanglement.add(obs.e_initial);
      });
  return std::move(acc.r);
}

DeltaDistributionResult delta_e_distribution(const ExperimentConfig& cfg) {
  require_samples(cfg);
  const BinAxis axis = cfg.delta_axis();
  struct Acc {
    std::vector<GateHistogram> per_gate;
    void merge(const Acc& o) { merge_gate_histograms(per_gate, o.per_gate); }
  };
  auto gates_acc = survey<Acc>(
      cfg, std::nullopt, kTagDelta, [&] { return Acc{gate_histograms(cfg.gates, axis)}; },
      [](Acc& a, const SlotObservation& obs) {
        for (std::size_t g = 0; g < obs.e_final.size(); ++g) {
          const double d = obs.e_final[g] - obs.e_initial;
          a.per_gate[g].histogram.add(d);
          a.per_gate[g].moments.add(d);
        }
      });

  // Reference: final state drawn independently of the initial one.
  struct RefAcc {
    Histogram hist;
    RunningMoments moments;
    void merge(const RefAcc& o) {
      hist.merge(o.hist);
      moments.merge(o.moments);
    }
  };
  auto ref = reduce_blocks<RefAcc>(
      cfg.samples, [&] { return RefAcc{Histogram(axis), {}}; },
      [&](RefAcc& a, std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        RngStream rng(cfg.seed, stream_id(kTagDeltaReference, b));
        for (std::uint64_t slot = begin; slot < end; ++slot) {
          const double e_initial = entanglement_of_formation(sample_state(rng, cfg.ensemble));
          const double e_final = entanglement_of_formation(sample_state(rng, cfg.ensemble));
          a.hist.add(e_final - e_initial);
          a.moments.add(e_final - e_initial);
        }
      },
      cfg.exec);

  return {std::move(gates_acc.per_gate), std::move(ref.hist), ref.moments};
}

namespace {

InitialVsDeltaResult initial_vs_delta_impl(const ExperimentConfig& cfg,
                                           const std::optional<Band>& band, std::uint32_t tag) {
  require_samples(cfg);
  const BinAxis axis = cfg.delta_axis();
  struct Acc {
    InitialVsDeltaResult r;
    void merge(const Acc& o) {
      merge_gate_curves(r.per_gate, o.r.per_gate);
      r.accepted += o.r.accepted;
      r.attempts += o.r.attempts;
    }
  };
  auto acc = survey<Acc>(
      cfg, band, tag, [&] { return Acc{{gate_curves(cfg.gates, axis), 0, 0}}; },
      [](Acc& a, const SlotObservation& obs) {
        for (std::size_t g = 0; g < obs.e_final.size(); ++g)
          a.r.per_gate[g].curve.add(obs.e_final[g] - obs.e_initial, obs.e_initial);
        ++a.r.accepted;
        a.r.attempts += obs.attempts;
      });
  return std::move(acc.r);
}

} // namespace

InitialVsDeltaResult initial_stats_vs_delta(const ExperimentConfig& cfg,
                                            const std::optional<Band>& band) {
  return initial_vs_delta_impl(cfg, band, kTagInitialVsDelta);
}

InitialVsDeltaResult initial_stats_vs_delta_at_fixed_R(const ExperimentConfig& cfg,
                                                       const Band& r_band) {
  if (!std::holds_alternative<ParticipationBand>(r_band))
    throw Error("fixed-R estimator needs an R band, got " + to_string(r_band));
  ExperimentConfig c = cfg;
  c.ensemble = Ensemble::All;
  return initial_vs_delta_impl(c, r_band, kTagFixedR);
}

std::vector<BandHistograms> final_dist_fixed_initial(const ExperimentConfig& cfg) {
  require_samples(cfg);
  const BinAxis axis = cfg.entanglement_axis();
  struct Acc {
    BandHistograms r;
    void merge(const Acc& o) {
      merge_gate_histograms(r.per_gate, o.r.per_gate);
      r.accepted += o.r.accepted;
      r.attempts += o.r.attempts;
    }
  };
  std::vector<BandHistograms> out;
  for (std::size_t k = 0; k < cfg.bands.size(); ++k) {
    const Band& band = cfg.bands[k];
    auto acc = survey<Acc>(
        cfg, band, kTagFixedInitialBase + static_cast<std::uint32_t>(k),
        [&] { return Acc{{band, gate_histograms(cfg.gates, axis), 0, 0}}; },
        [](Acc& a, const SlotObservation& obs) {
          for (std::size_t g = 0; g < obs.e_final.size(); ++g) {
            a.r.per_gate[g].histogram.add(obs.e_final[g]);
            a.r.per_gate[g].moments.add(obs.e_final[g]);
          }
          ++a.r.accepted;
          a.r.attempts += obs.attempts;
        });
    out.push_back(std::move(acc.r));
  }
  return out;
}

namespace {

struct SequenceAcc {
  std::vector<double> values;
  void merge(const SequenceAcc& o) { values.insert(values.end(), o.values.begin(), o.values.end()); }
};

} // namespace

std::vector<double> entanglement_sequence(const ExperimentConfig& cfg, std::uint32_t tag) {
  ExperimentConfig c = cfg;
  c.gates.clear();
  auto acc = survey<SequenceAcc>(
      c, std::nullopt, tag, [] { return SequenceAcc{}; },
      [](SequenceAcc& a, const SlotObservation& obs) { a.values.push_back(obs.e_initial); });
  return std::move(acc.values);
}

InvarianceSamples unitary_invariance_samples(const ExperimentConfig& cfg, const ComplexMatrix4& v) {
  require_samples(cfg);
  ExperimentConfig before_cfg = cfg;
  before_cfg.gates.clear();
  ExperimentConfig after_cfg = cfg;
  after_cfg.gates = {Gate::custom(v, "fixed-unitary")};

  InvarianceSamples out;
  out.before = entanglement_sequence(before_cfg, kTagInvarianceBefore);
  auto acc = survey<SequenceAcc>(
      after_cfg, std::nullopt, kTagInvarianceAfter, [] { return SequenceAcc{}; },
      [](SequenceAcc& a, const SlotObservation& obs) { a.values.push_back(obs.e_final[0]); });
  out.after = std::move(acc.values);
  return out;
}

} // namespace entangle
