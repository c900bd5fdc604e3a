#pragma once

// Monte Carlo estimators over random two-qubit states acted on by gates.
// Every estimator is deterministic in (config, seed) and independent of the
// worker count; see parallel.hpp.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "entangle/accumulators.hpp"
#include "entangle/gates.hpp"
#include "entangle/measures.hpp"
#include "entangle/parallel.hpp"
#include "entangle/sampling.hpp"

namespace entangle {

inline constexpr std::size_t kDefaultEntanglementBins = 100; // width 0.01 on [0, 1]
inline constexpr std::size_t kDefaultDeltaBins = 101;        // width 0.02, centered on 0
inline constexpr double kDefaultEnergyBandHalfWidth = 0.005;
inline constexpr double kDefaultParticipationBandHalfWidth = 0.01;

struct ExperimentConfig {
  std::vector<Gate> gates;
  Ensemble ensemble = Ensemble::All;
  /// Unconditioned draws, or accepted draws for conditioned estimators.
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  /// Bins on the estimator's main axis; 0 picks the default for that axis.
  std::size_t bins = 0;
  std::vector<Band> bands;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  Executor exec;

  BinAxis entanglement_axis() const;
  BinAxis delta_axis() const;
};

/// What a survey reports for one sample slot.
struct SlotObservation {
  const DensityMatrix& state;
  double e_initial;
  std::span<const double> e_final; // one per gate, same order as the gates
  std::uint64_t attempts;          // draws used, 1 when unconditioned
};

/// Core loop shared by the estimators: draw a state per slot (rejection
/// sampled when `band` is set), evaluate E before and after each gate, and
/// hand the result to `record(acc, obs)`.
template <class Acc, class MakeAcc, class Record>
Acc survey(const ExperimentConfig& cfg, const std::optional<Band>& band, std::uint32_t tag,
           MakeAcc&& make, Record&& record) {
  const auto& gates = cfg.gates;
  auto block = [&](Acc& acc, std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    RngStream rng(cfg.seed, stream_id(tag, b));
    std::vector<double> ef(gates.size());
    for (std::uint64_t slot = begin; slot < end; ++slot) {
      std::uint64_t attempts = 1;
      std::optional<DensityMatrix> state;
      if (band) {
        auto drawn = sample_conditioned(rng, cfg.ensemble, *band, cfg.max_attempts);
        attempts = drawn.attempts;
        state.emplace(std::move(drawn.state));
      } else {
        state.emplace(sample_state(rng, cfg.ensemble));
      }
      const double e0 = entanglement_of_formation(*state);
      for (std::size_t g = 0; g < gates.size(); ++g)
        ef[g] = entanglement_of_formation(apply(gates[g], *state));
      record(acc, SlotObservation{*state, e0, ef, attempts});
    }
  };
  return reduce_blocks<Acc>(cfg.samples, make, block, cfg.exec);
}

struct GateHistogram {
  Gate gate;
  Histogram histogram;
  RunningMoments moments;
};

struct GateCurve {
  Gate gate;
  ConditionalCurve curve;
};

// --- P(E) of an ensemble --------------------------------------------------

struct EntanglementHistogramResult {
  Histogram histogram;
  RunningMoments entanglement;
};

/// Uses cfg.ensemble, cfg.samples (0 allowed: empty histogram).
EntanglementHistogramResult entanglement_histogram(const ExperimentConfig& cfg);

// --- P(E_F) from separable initial states ---------------------------------

struct SeparableGateResult {
  std::vector<GateHistogram> per_gate;
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  double acceptance_rate() const;
};

/// Conditions cfg.ensemble on C = 0; cfg.samples accepted states.
SeparableGateResult gate_from_separable(const ExperimentConfig& cfg);

// --- <E_F> as a function of E_0 -------------------------------------------

struct FinalVsInitialResult {
  std::vector<GateCurve> per_gate; // E_F binned by E_0
  ConditionalCurve initial;        // E_0 binned by E_0
  RunningMoments entanglement;     // E_0 over the whole ensemble
};

FinalVsInitialResult mean_final_vs_initial(const ExperimentConfig& cfg);

// --- P(Delta E) -----------------------------------------------------------

struct DeltaDistributionResult {
  std::vector<GateHistogram> per_gate; // histogram and moments of Delta E
  Histogram reference;                 // E(sigma) - E(rho), independent pairs
  RunningMoments reference_moments;
};

DeltaDistributionResult delta_e_distribution(const ExperimentConfig& cfg);

// --- E_0 statistics as a function of Delta E -------------------------------

struct InitialVsDeltaResult {
  std::vector<GateCurve> per_gate; // E_0 binned by Delta E
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
};

/// Unconditioned ensemble, or conditioned on `band` when given.
InitialVsDeltaResult initial_stats_vs_delta(const ExperimentConfig& cfg,
                                            const std::optional<Band>& band = std::nullopt);

/// The same on mixed states restricted to an R band.
InitialVsDeltaResult initial_stats_vs_delta_at_fixed_R(const ExperimentConfig& cfg,
                                                       const Band& r_band);

// --- P(E_F) at fixed E_0 ----------------------------------------------------

struct BandHistograms {
  Band band;
  std::vector<GateHistogram> per_gate;
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
};

/// One rejection-sampled run per band in cfg.bands.
std::vector<BandHistograms> final_dist_fixed_initial(const ExperimentConfig& cfg);

// --- Unitary invariance of the ensemble -------------------------------------

struct InvarianceSamples {
  std::vector<double> before; // E(rho) for one set of draws
  std::vector<double> after;  // E(V sigma V^dagger) for an independent set
};

InvarianceSamples unitary_invariance_samples(const ExperimentConfig& cfg, const ComplexMatrix4& v);

/// Raw E_0 sequence, in slot order, from the stream family `tag`.
std::vector<double> entanglement_sequence(const ExperimentConfig& cfg, std::uint32_t tag);

} // namespace entangle
