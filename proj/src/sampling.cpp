#include "entangle/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "entangle/measures.hpp"

namespace entangle {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
  engine_.seed(seq);
}

Complex RngStream::complex_normal() {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {re * kInvSqrt2, im * kInvSqrt2};
}

ComplexMatrix4 haar_unitary(RngStream& rng) {
  // Ginibre columns, then Gram-Schmidt. Gram-Schmidt yields the QR factor
  // whose triangular diagonal is real positive, which is the phase
  // convention required for an exactly Haar-distributed Q. The second
  // orthogonalization pass only removes round-off.
  std::array<Vector4, 4> cols{};
  for (auto& c : cols)
    for (auto& z : c) z = rng.complex_normal();

  for (std::size_t j = 0; j < 4; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const Complex proj = dot(cols[k], cols[j]);
        for (std::size_t i = 0; i < 4; ++i) cols[j][i] -= proj * cols[k][i];
      }
    }
    const double n = norm(cols[j]);
    for (auto& z : cols[j]) z /= n;
  }

  ComplexMatrix4 u;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) u(i, j) = cols[j][i];
  return u;
}

SimplexPoint uniform_simplex(RngStream& rng) {
  // Normalized exponentials = Dirichlet(1,1,1,1) = normalized Lebesgue on
  // the simplex.
  SimplexPoint p;
  double total = 0.0;
  for (auto& w : p.weights) {
    w = rng.exponential();
    total += w;
  }
  for (auto& w : p.weights) w /= total;
  return p;
}

DensityMatrix sample_with_spectrum(RngStream& rng, const SimplexPoint& weights) {
  const ComplexMatrix4 u = haar_unitary(rng);
  std::array<Vector4, 4> basis{};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) basis[j][i] = u(i, j);
  return DensityMatrix::from_spectrum(weights.weights, basis);
}

DensityMatrix sample_mixed(RngStream& rng) {
  const SimplexPoint w = uniform_simplex(rng);
  return sample_with_spectrum(rng, w);
}

PureState sample_pure(RngStream& rng) {
  Vector4 v{};
  for (auto& z : v) z = rng.complex_normal();
  return PureState::normalized(v);
}

std::string_view to_string(Ensemble e) { return e == Ensemble::Pure ? "pure" : "all"; }

Ensemble parse_ensemble(std::string_view s) {
  if (s == "pure") return Ensemble::Pure;
  if (s == "all") return Ensemble::All;
  throw Error("unknown ensemble '" + std::string(s) + "' (expected pure or all)");
}

DensityMatrix sample_state(RngStream& rng, Ensemble e) {
  return e == Ensemble::Pure ? density_from_pure(sample_pure(rng)) : sample_mixed(rng);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
    throw BandParseError("bad number in band '" + std::string(whole) + "'");
  return x;
}

std::string fmt_num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Sum of squares in the same (descending) order DensityMatrix stores its
// spectrum, so R agrees bit-for-bit with participation_ratio().
double participation_from_weights(std::array<double, 4> w) {
  std::sort(w.begin(), w.end(), std::greater<>());
  double s = 0.0;
  for (double p : w) {
    p = std::max(p, 0.0);
    s += p * p;
  }
  return 1.0 / s;
}

} // namespace

Band parse_band(std::string_view s) {
  const std::string_view t = trim(s);
  if (t.empty()) throw BandParseError("empty band specification");
  const char var = t.front();
  if (var != 'E' && var != 'R') throw BandParseError("band must start with E or R: '" + std::string(s) + "'");
  std::string_view rest = trim(t.substr(1));
  if (!rest.empty() && rest.front() == '=') {
    if (var == 'E' && parse_number(rest.substr(1), s) == 0.0) return SeparableBand{};
    throw BandParseError("only 'E=0' is supported as an exact band: '" + std::string(s) + "'");
  }
  if (rest.substr(0, 2) != "in") throw BandParseError("expected 'in [a,b]' in band '" + std::string(s) + "'");
  rest = trim(rest.substr(2));
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
    throw BandParseError("expected '[a,b]' in band '" + std::string(s) + "'");
  rest = rest.substr(1, rest.size() - 2);
  const auto comma = rest.find(',');
  if (comma == std::string_view::npos) throw BandParseError("expected '[a,b]' in band '" + std::string(s) + "'");
  const double lo = parse_number(rest.substr(0, comma), s);
  const double hi = parse_number(rest.substr(comma + 1), s);
  if (lo > hi) throw BandParseError("empty interval in band '" + std::string(s) + "'");
  if (var == 'E') return EntanglementBand{lo, hi};
  return ParticipationBand{lo, hi};
}

std::string to_string(const Band& b) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SeparableBand>)
          return "E=0";
        else if constexpr (std::is_same_v<T, EntanglementBand>)
          return "E in [" + fmt_num(x.lo) + "," + fmt_num(x.hi) + "]";
        else
          return "R in [" + fmt_num(x.lo) + "," + fmt_num(x.hi) + "]";
      },
      b);
}

std::string band_slug(const Band& b) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SeparableBand>)
          return "E0";
        else if constexpr (std::is_same_v<T, EntanglementBand>)
          return "E_" + fmt_num(x.lo) + "_" + fmt_num(x.hi);
        else
          return "R_" + fmt_num(x.lo) + "_" + fmt_num(x.hi);
      },
      b);
}

Band entanglement_band(double center, double half_width) {
  return EntanglementBand{center - half_width, center + half_width};
}

Band participation_band(double center, double half_width) {
  return ParticipationBand{center - half_width, center + half_width};
}

RejectionBudgetExceeded::RejectionBudgetExceeded(const std::string& band, std::uint64_t n)
    : Error("rejection budget exceeded after " + std::to_string(n) + " attempts for band '" + band +
            "'"),
      attempts(n) {}

bool band_contains(const Band& band, const DensityMatrix& rho) {
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SeparableBand>) {
          return concurrence(rho).value == 0.0;
        } else if constexpr (std::is_same_v<T, EntanglementBand>) {
          const double e = entanglement_of_formation(rho);
          return e >= b.lo && e <= b.hi;
        } else {
          const double r = participation_ratio(rho);
          return r >= b.lo && r <= b.hi;
        }
      },
      band);
}

ConditionedSample sample_conditioned(RngStream& rng, Ensemble kind, const Band& band,
                                     std::uint64_t max_attempts) {
  if (const auto* rb = std::get_if<ParticipationBand>(&band)) {
    if (kind == Ensemble::Pure) {
      // Every pure state has R = 1.
      if (1.0 < rb->lo || 1.0 > rb->hi) throw RejectionBudgetExceeded(to_string(band), max_attempts);
      return {density_from_pure(sample_pure(rng)), 1};
    }
    for (std::uint64_t n = 1; n <= max_attempts; ++n) {
      const SimplexPoint w = uniform_simplex(rng);
      const double r = participation_from_weights(w.weights);
      if (r >= rb->lo && r <= rb->hi) return {sample_with_spectrum(rng, w), n};
    }
    throw RejectionBudgetExceeded(to_string(band), max_attempts);
  }

  for (std::uint64_t n = 1; n <= max_attempts; ++n) {
    DensityMatrix rho = sample_state(rng, kind);
    if (band_contains(band, rho)) return {std::move(rho), n};
  }
  throw RejectionBudgetExceeded(to_string(band), max_attempts);
}

} // namespace entangle
