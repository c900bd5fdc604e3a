#pragma once

// Measure-correct random two-qubit states.
//
//   mixed: rho = U diag(lambda) U^dagger, U Haar on U(4), lambda uniform on
//          the 3-simplex (the product measure nu x L3);
//   pure:  normalized complex Gaussian 4-vector (Fubini-Study).

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "entangle/state.hpp"

namespace entangle {

/// One independent random stream. Identical (seed, stream_id) pairs replay
/// identical draws; a stream must never be shared between workers.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double normal() { return normal_(engine_); }
  double exponential() { return exponential_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

struct SimplexPoint {
  std::array<double, 4> weights{};
};

ComplexMatrix4 haar_unitary(RngStream& rng);
SimplexPoint uniform_simplex(RngStream& rng);
DensityMatrix sample_mixed(RngStream& rng);
/// Mixed state with the given eigenvalues and a Haar-random eigenbasis.
DensityMatrix sample_with_spectrum(RngStream& rng, const SimplexPoint& weights);
PureState sample_pure(RngStream& rng);

enum class Ensemble { Pure, All };
std::string_view to_string(Ensemble e);
Ensemble parse_ensemble(std::string_view s);

DensityMatrix sample_state(RngStream& rng, Ensemble e);

/// Conditioning predicates for rejection sampling.
struct SeparableBand {}; // C == 0 after clamping
struct EntanglementBand {
  double lo, hi;
};
struct ParticipationBand {
  double lo, hi;
};
using Band = std::variant<SeparableBand, EntanglementBand, ParticipationBand>;

class BandParseError : public Error {
public:
  using Error::Error;
};

/// "E=0", "E in [a,b]", "R in [a,b]".
Band parse_band(std::string_view s);
std::string to_string(const Band& b);
/// File-name friendly label, e.g. "E_0.095_0.105".
std::string band_slug(const Band& b);
/// Band [center - half_width, center + half_width] on E or R.
Band entanglement_band(double center, double half_width);
Band participation_band(double center, double half_width);

class RejectionBudgetExceeded : public Error {
public:
  RejectionBudgetExceeded(const std::string& band, std::uint64_t attempts);
  std::uint64_t attempts;
};

inline constexpr std::uint64_t kDefaultMaxAttempts = 10'000'000;

struct ConditionedSample {
  DensityMatrix state;
  std::uint64_t attempts;
};

/// Draws from the unconditioned sampler of `kind` until `band` holds.
/// For R bands on mixed states only the simplex weights are redrawn, since
/// R depends on them alone and they are independent of the eigenbasis.
ConditionedSample sample_conditioned(RngStream& rng, Ensemble kind, const Band& band,
                                     std::uint64_t max_attempts = kDefaultMaxAttempts);

bool band_contains(const Band& band, const DensityMatrix& rho);

} // namespace entangle
