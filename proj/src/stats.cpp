#include "entangle/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "entangle/matrix4.hpp"

namespace entangle {

double ks_coefficient(double alpha) { return std::sqrt(-0.5 * std::log(0.5 * alpha)); }

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.empty() || b.empty()) throw Error("KS test needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_coefficient(alpha) * std::sqrt((na + nb) / (na * nb))};
}

KsResult ks_one_sample(std::vector<double> s, const std::function<double(double)>& cdf,
                       double alpha) {
  if (s.empty()) throw Error("KS test needs a non-empty sample");
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double f = cdf(s[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return {d, ks_coefficient(alpha) / std::sqrt(n)};
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("correlation needs equal lengths >= 2");
  RunningMoments mx, my;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx.add(x[k]);
    my.add(y[k]);
    sxy += x[k] * y[k];
  }
  const double n = static_cast<double>(x.size());
  const double cov = sxy / n - mx.mean() * my.mean();
  const double den = std::sqrt(mx.variance() * my.variance());
  return den > 0.0 ? cov / den : 0.0;
}

std::optional<double> find_crossing(const ConditionalCurve& a, const ConditionalCurve& b) {
  if (!(a.axis() == b.axis())) throw Error("curves must share an axis");
  std::optional<std::size_t> prev;
  double prev_diff = 0.0;
  for (std::size_t i = 0; i < a.axis().bins; ++i) {
    const auto ma = a.mean(i), mb = b.mean(i);
    if (!ma || !mb) continue;
    const double diff = *ma - *mb;
    if (prev && ((prev_diff > 0.0 && diff <= 0.0) || (prev_diff < 0.0 && diff >= 0.0))) {
      const double x0 = a.axis().center(*prev);
      const double x1 = a.axis().center(i);
      if (diff == prev_diff) return x1;
      return x0 + (x1 - x0) * prev_diff / (prev_diff - diff);
    }
    if (diff != 0.0) {
      prev = i;
      prev_diff = diff;
    }
  }
  return std::nullopt;
}

namespace {

std::optional<std::array<double, 3>> neighbour_variances(const ConditionalCurve& c, std::size_t i) {
  if (i == 0 || i + 1 >= c.axis().bins) return std::nullopt;
  const auto l = c.variance(i - 1), m = c.variance(i), r = c.variance(i + 1);
  if (!l || !m || !r) return std::nullopt;
  return std::array<double, 3>{*l, *m, *r};
}

} // namespace

bool variance_local_max(const ConditionalCurve& c, std::size_t i) {
  const auto v = neighbour_variances(c, i);
  return v && (*v)[1] > (*v)[0] && (*v)[1] > (*v)[2];
}

bool variance_local_min(const ConditionalCurve& c, std::size_t i) {
  const auto v = neighbour_variances(c, i);
  return v && (*v)[1] < (*v)[0] && (*v)[1] < (*v)[2];
}

} // namespace entangle
