#include "entangle/accumulators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entangle/matrix4.hpp"

namespace entangle {

BinAxis BinAxis::unit(std::size_t bins) {
  if (bins == 0) throw Error("histogram needs at least one bin");
  return {0.0, 1.0, bins};
}

BinAxis BinAxis::centered_delta(std::size_t bins) {
  if (bins < 2) throw Error("delta axis needs at least two bins");
  const double w = 2.0 / static_cast<double>(bins - 1);
  return {-1.0 - 0.5 * w, 1.0 + 0.5 * w, bins};
}

double BinAxis::lower(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
}

double BinAxis::upper(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(bins);
}

double BinAxis::center(std::size_t i) const { return 0.5 * (lower(i) + upper(i)); }

std::optional<std::size_t> BinAxis::index(double x) const {
  if (!(x >= lo && x <= hi)) return std::nullopt;
  auto i = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins));
  return std::min(i, bins - 1);
}

void RunningMoments::merge(const RunningMoments& o) {
  n += o.n;
  sum += o.sum;
  sum2 += o.sum2;
  sum3 += o.sum3;
}

double RunningMoments::mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }

double RunningMoments::variance() const {
  if (n == 0) return 0.0;
  const double m = mean();
  return std::max(sum2 / static_cast<double>(n) - m * m, 0.0);
}

double RunningMoments::stderr_mean() const {
  if (n < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(n - 1));
}

double RunningMoments::skewness() const {
  if (n == 0) return 0.0;
  const double dn = static_cast<double>(n);
  const double m = mean();
  const double var = variance();
  if (var <= 0.0) return 0.0;
  const double m3 = sum3 / dn - 3.0 * m * sum2 / dn + 2.0 * m * m * m;
  return m3 / std::pow(var, 1.5);
}

void Histogram::add(double x) {
  const auto i = axis_.index(x);
  if (!i) throw InvariantViolation("histogram value " + std::to_string(x) + " outside axis");
  ++counts_[*i];
  ++total_;
}

void Histogram::merge(const Histogram& o) {
  if (!(o.axis_ == axis_)) throw Error("cannot merge histograms with different axes");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
  total_ += o.total_;
}

std::vector<double> Histogram::density() const {
  std::vector<double> d(counts_.size(), 0.0);
  if (total_ == 0) return d;
  const double norm = static_cast<double>(total_) * axis_.width();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<double>(counts_[i]) / norm;
  return d;
}

double Histogram::mass(std::size_t i) const {
  return total_ > 0 ? static_cast<double>(counts_[i]) / static_cast<double>(total_) : 0.0;
}

void ConditionalCurve::add(double x, double y) {
  const auto i = axis_.index(x);
  if (!i) throw InvariantViolation("curve abscissa " + std::to_string(x) + " outside axis");
  bins_[*i].add(y);
}

void ConditionalCurve::merge(const ConditionalCurve& o) {
  if (!(o.axis_ == axis_)) throw Error("cannot merge curves with different axes");
  for (std::size_t i = 0; i < bins_.size(); ++i) bins_[i].merge(o.bins_[i]);
}

std::optional<double> ConditionalCurve::mean(std::size_t i) const {
  if (bins_[i].n == 0) return std::nullopt;
  return bins_[i].mean();
}

std::optional<double> ConditionalCurve::second_moment(std::size_t i) const {
  if (bins_[i].n == 0) return std::nullopt;
  return bins_[i].sum2 / static_cast<double>(bins_[i].n);
}

std::optional<double> ConditionalCurve::variance(std::size_t i) const {
  if (bins_[i].n == 0) return std::nullopt;
  const double m = *mean(i);
  const double v = *second_moment(i) - m * m;
  if (v < -1e-12) throw InvariantViolation("negative variance " + std::to_string(v));
  return std::max(v, 0.0);
}

} // namespace entangle
