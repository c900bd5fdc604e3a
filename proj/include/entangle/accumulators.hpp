#pragma once

// Mergeable Monte Carlo accumulators. Integer counts merge exactly; the
// floating-point sums merge exactly too as long as partials are folded in a
// fixed order, which the block engine in parallel.hpp guarantees.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace entangle {

struct BinAxis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t bins = 100;

  /// [0, 1] split into `bins` bins.
  static BinAxis unit(std::size_t bins);
  /// `bins` bins whose centers run from -1 to 1 in equal steps, so that for
  /// odd `bins` one bin is centered on zero. Width is 2 / (bins - 1).
  static BinAxis centered_delta(std::size_t bins);

  double width() const { return (hi - lo) / static_cast<double>(bins); }
  double lower(std::size_t i) const;
  double upper(std::size_t i) const;
  double center(std::size_t i) const;
  /// Bin holding x; x == hi goes to the last bin. nullopt outside [lo, hi].
  std::optional<std::size_t> index(double x) const;
  bool operator==(const BinAxis&) const = default;
};

/// Counts, sum, sum of squares and sum of cubes of a scalar.
struct RunningMoments {
  std::int64_t n = 0;
  double sum = 0.0;
  double sum2 = 0.0;
  double sum3 = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sum2 += x * x;
    sum3 += x * x * x;
  }
  void merge(const RunningMoments& o);

  double mean() const;
  /// Population variance <x^2> - <x>^2, clamped at 0.
  double variance() const;
  /// Standard error of the mean.
  double stderr_mean() const;
  double skewness() const;
  bool operator==(const RunningMoments&) const = default;
};

class Histogram {
public:
  Histogram() = default;
  explicit Histogram(const BinAxis& axis) : axis_(axis), counts_(axis.bins, 0) {}

  /// Throws InvariantViolation if x lies outside the axis.
  void add(double x);
  void merge(const Histogram& o);

  const BinAxis& axis() const { return axis_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }
  /// counts / (total * width); all zeros when total == 0.
  std::vector<double> density() const;
  /// Fraction of samples in bin i (0 when empty).
  double mass(std::size_t i) const;
  bool operator==(const Histogram&) const = default;

private:
  BinAxis axis_{};
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Statistics of y binned by x. Bins with no samples report nullopt.
class ConditionalCurve {
public:
  ConditionalCurve() = default;
  explicit ConditionalCurve(const BinAxis& axis) : axis_(axis), bins_(axis.bins) {}

  void add(double x, double y);
  void merge(const ConditionalCurve& o);

  const BinAxis& axis() const { return axis_; }
  std::int64_t count(std::size_t i) const { return bins_[i].n; }
  std::optional<double> mean(std::size_t i) const;
  std::optional<double> second_moment(std::size_t i) const;
  /// <y^2> - <y>^2; round-off negatives down to -1e-12 clamp to 0.
  std::optional<double> variance(std::size_t i) const;
  const RunningMoments& moments(std::size_t i) const { return bins_[i]; }
  bool operator==(const ConditionalCurve&) const = default;

private:
  BinAxis axis_{};
  std::vector<RunningMoments> bins_;
};

} // namespace entangle
