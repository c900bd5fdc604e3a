#include "doctest.h"
#include "support.hpp"

using namespace testing;

TEST_CASE("BinAxis geometry") {
  const auto u = BinAxis::unit(100);
  CHECK(u.width() == doctest::Approx(0.01));
  CHECK(u.index(0.0) == 0u);
  CHECK(u.index(1.0) == 99u);
  CHECK(u.index(0.005) == 0u);
  CHECK(u.index(0.015) == 1u);
  CHECK_FALSE(u.index(-1e-15).has_value());
  CHECK_FALSE(u.index(1.0 + 1e-15).has_value());
  CHECK_FALSE(u.index(std::nan("")).has_value());

  const auto d = BinAxis::centered_delta(101);
  CHECK(d.width() == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(d.center(50) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.index(0.0) == 50u);
  CHECK(d.index(-1.0) == 0u);
  CHECK(d.index(1.0) == 100u);
  CHECK(d.index(0.0099) == 50u);
  CHECK(d.index(-0.0099) == 50u);
  CHECK(d.index(0.0101) == 51u);
}

TEST_CASE("Histogram normalization and empty input") {
  Histogram h(BinAxis::unit(100));
  CHECK(h.total() == 0);
  for (double x : h.density()) CHECK(x == 0.0);
  CHECK(h.mass(0) == 0.0);

  RngStream rng(71, 0);
  for (int k = 0; k < 10000; ++k) h.add(rng.uniform());
  std::int64_t sum = 0;
  for (auto c : h.counts()) sum += c;
  CHECK(sum == h.total());
  double integral = 0.0;
  for (double x : h.density()) integral += x * h.axis().width();
  CHECK(std::abs(integral - 1.0) < 1e-9);
  CHECK_THROWS_AS(h.add(1.5), InvariantViolation);
}

TEST_CASE("Histogram merge is exact and checks axes") {
  Histogram a(BinAxis::unit(10)), b(BinAxis::unit(10)), all(BinAxis::unit(10));
  RngStream rng(72, 0);
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform();
    (k % 3 ? a : b).add(x);
    all.add(x);
  }
  Histogram ab = a;
  ab.merge(b);
  CHECK(ab == all);
  Histogram ba = b;
  ba.merge(a);
  CHECK(ba == all);
  CHECK_THROWS_AS(a.merge(Histogram(BinAxis::unit(11))), Error);
}

TEST_CASE("RunningMoments") {
  RunningMoments m;
  CHECK(m.mean() == 0.0);
  CHECK(m.variance() == 0.0);
  for (double x : {1.0, 2.0, 3.0, 4.0}) m.add(x);
  CHECK(m.mean() == 2.5);
  CHECK(m.variance() == 1.25);
  CHECK(m.stderr_mean() == doctest::Approx(std::sqrt(1.25 / 3.0)));
  CHECK(m.skewness() == doctest::Approx(0.0).epsilon(1e-12));
  RunningMoments skew;
  for (double x : {0.0, 0.0, 0.0, 1.0}) skew.add(x);
  CHECK(skew.skewness() == doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("ConditionalCurve gaps, variance and merge") {
  ConditionalCurve c(BinAxis::unit(4));
  c.add(0.1, 1.0);
  c.add(0.1, 3.0);
  c.add(0.9, 5.0);
  CHECK(c.count(0) == 2);
  CHECK(*c.mean(0) == 2.0);
  CHECK(*c.second_moment(0) == 5.0);
  CHECK(*c.variance(0) == 1.0);
  CHECK_FALSE(c.mean(1).has_value());
  CHECK_FALSE(c.variance(2).has_value());
  CHECK(*c.variance(3) == 0.0);

  ConditionalCurve d(BinAxis::unit(4));
  d.add(0.4, 2.0);
  ConditionalCurve m = c;
  m.merge(d);
  CHECK(m.count(1) == 1);
  CHECK(*m.mean(1) == 2.0);
  CHECK(m.moments(0) == c.moments(0));
}
