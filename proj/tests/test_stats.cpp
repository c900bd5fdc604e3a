#include <random>

#include "doctest.h"
#include "entangle/stats.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("KS coefficient") {
  CHECK(ks_coefficient(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(ks_coefficient(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
}

TEST_CASE("two-sample KS accepts equal laws and rejects shifted ones") {
  std::mt19937_64 gen(81);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> a, b, c;
  for (int k = 0; k < 20000; ++k) {
    a.push_back(n(gen));
    b.push_back(n(gen));
    c.push_back(n(gen) + 0.1);
  }
  CHECK(ks_two_sample(a, b, 0.01).passes());
  CHECK_FALSE(ks_two_sample(a, c, 0.01).passes());
}

TEST_CASE("two-sample KS handles ties") {
  std::vector<double> a(1000, 0.0), b(1000, 0.0);
  CHECK(ks_two_sample(a, b, 0.01).statistic == 0.0);
  b[0] = 1.0;
  CHECK(ks_two_sample(a, b, 0.01).statistic == doctest::Approx(0.001));
}

TEST_CASE("one-sample KS against a uniform CDF") {
  std::mt19937_64 gen(82);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s;
  for (int k = 0; k < 20000; ++k) s.push_back(u(gen));
  CHECK(ks_one_sample(s, [](double x) { return x; }, 0.01).passes());
  CHECK_FALSE(ks_one_sample(s, [](double x) { return x * x; }, 0.01).passes());
}

TEST_CASE("pearson correlation") {
  std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{4, 3, 2, 1};
  CHECK(pearson_correlation(x, y) == doctest::Approx(1.0));
  CHECK(pearson_correlation(x, z) == doctest::Approx(-1.0));
}

TEST_CASE("find_crossing interpolates between bin centers and skips gaps") {
  const auto axis = BinAxis::unit(10);
  ConditionalCurve a(axis), b(axis);
  for (std::size_t i = 0; i < 10; ++i) {
    if (i == 4) continue; // gap in both
    const double x = axis.center(i);
    a.add(x, x);
    b.add(x, 0.52);
  }
  // a - b: centers 0.35 -> -0.17, 0.55 -> +0.03 (bin 4 is empty).
  const auto c = find_crossing(a, b);
  REQUIRE(c.has_value());
  CHECK(*c == doctest::Approx(0.35 + 0.2 * 0.17 / 0.20));

  ConditionalCurve flat(axis);
  for (std::size_t i = 0; i < 10; ++i) flat.add(axis.center(i), 2.0);
  CHECK_FALSE(find_crossing(a, flat).has_value());
}

TEST_CASE("variance local extrema") {
  const auto axis = BinAxis::unit(5);
  ConditionalCurve c(axis);
  const double spread[5] = {0.1, 0.2, 0.5, 0.2, 0.1};
  for (std::size_t i = 0; i < 5; ++i) {
    c.add(axis.center(i), 1.0 - spread[i]);
    c.add(axis.center(i), 1.0 + spread[i]);
  }
  CHECK(variance_local_max(c, 2));
  CHECK_FALSE(variance_local_min(c, 2));
  CHECK_FALSE(variance_local_max(c, 1));
  CHECK_FALSE(variance_local_max(c, 0)); // edge bins have no two neighbours

  ConditionalCurve gap(axis);
  gap.add(axis.center(2), 1.0);
  CHECK_FALSE(variance_local_max(gap, 2));
}
