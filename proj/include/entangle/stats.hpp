#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "entangle/accumulators.hpp"

namespace entangle {

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0; // at the requested significance level
  bool passes() const { return statistic < critical; }
};

/// Asymptotic Kolmogorov coefficient c(alpha) = sqrt(-ln(alpha/2) / 2).
double ks_coefficient(double alpha);

/// Two-sample Kolmogorov-Smirnov test. Takes copies (sorted internally).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha);

/// One-sample test against a continuous CDF.
KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf,
                       double alpha);

/// Pearson correlation of two equally long sequences.
double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

/// Abscissa where mean(a) - mean(b) first changes sign, scanning bins in
/// increasing order and skipping empty ones. Linear interpolation between
/// the centers of the two bins that bracket the flip.
std::optional<double> find_crossing(const ConditionalCurve& a, const ConditionalCurve& b);

/// True if bin `i` has a larger variance than both neighbours.
bool variance_local_max(const ConditionalCurve& c, std::size_t i);
/// True if bin `i` has a smaller variance than both neighbours.
bool variance_local_min(const ConditionalCurve& c, std::size_t i);

} // namespace entangle
