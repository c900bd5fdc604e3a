#include "doctest.h"
#include "support.hpp"

using namespace testing;

namespace {

Vector4 basis(std::size_t k) {
  Vector4 v{};
  v[k] = 1.0;
  return v;
}

double unitarity_error(const ComplexMatrix4& u) {
  return max_abs_diff(matmul(u, adjoint(u)), ComplexMatrix4::identity());
}

} // namespace

TEST_CASE("cnot acts on basis states with the first qubit as control") {
  const auto u = Gate::cnot().matrix();
  CHECK(u * basis(0) == basis(0));
  CHECK(u * basis(1) == basis(1));
  CHECK(u * basis(2) == basis(3));
  CHECK(u * basis(3) == basis(2));

  const Complex c1(0.6, 0.0), c2(0.0, 0.8);
  const Vector4 in{c1, 0.0, c2, 0.0};
  const Vector4 expect{c1, 0.0, 0.0, c2};
  CHECK(u * in == expect);
}

TEST_CASE("u_theta block structure") {
  CHECK(Gate::u_theta(0.0).matrix() == ComplexMatrix4::identity());
  const double t = 0.3;
  const auto u = Gate::u_theta(t).matrix();
  CHECK(u(0, 0) == Complex(1.0));
  CHECK(u(1, 1) == Complex(1.0));
  CHECK(u(2, 2) == Complex(std::cos(t)));
  CHECK(u(2, 3) == Complex(std::sin(t)));
  CHECK(u(3, 2) == Complex(-std::sin(t)));
  CHECK(u(3, 3) == Complex(std::cos(t)));
  CHECK(u(0, 2) == Complex(0.0));
}

TEST_CASE("u_theta on the uniform real state") {
  const auto rho = density_from_pure(PureState(0.5, 0.5, 0.5, 0.5));
  CHECK(double(concurrence(apply(Gate::u_theta(M_PI / 2), rho))) == doctest::Approx(1.0).epsilon(1e-12));
  const double c = concurrence(apply(Gate::u_theta(M_PI / 4), rho));
  CHECK(c * c == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("every gate is unitary") {
  CHECK(unitarity_error(Gate::identity().matrix()) < 1e-15);
  CHECK(unitarity_error(Gate::cnot().matrix()) < 1e-15);
  for (int k = 0; k < 100; ++k) CHECK(unitarity_error(Gate::u_theta(0.1 * k).matrix()) < 1e-15);
  RngStream rng(41, 0);
  CHECK(unitarity_error(Gate::custom(haar_unitary(rng)).matrix()) < 1e-12);
  ComplexMatrix4 bad = ComplexMatrix4::identity();
  bad(0, 0) = 1.001;
  CHECK_THROWS_AS(Gate::custom(bad), NotUnitary);
}

TEST_CASE("parse_gate grammar") {
  CHECK(parse_gate("cnot").kind() == Gate::Kind::Cnot);
  CHECK(parse_gate("identity").kind() == Gate::Kind::Identity);
  CHECK(parse_gate("theta:pi/4").theta() == M_PI / 4);
  CHECK(parse_gate("theta:pi/3").theta() == M_PI / 3);
  CHECK(parse_gate("theta:pi").theta() == M_PI);
  CHECK(parse_gate("theta:3pi/4").theta() == doctest::Approx(3 * M_PI / 4).epsilon(1e-15));
  CHECK(parse_gate("theta:2*pi/3").theta() == doctest::Approx(2 * M_PI / 3).epsilon(1e-15));
  CHECK(parse_gate("theta:-pi/6").theta() == doctest::Approx(-M_PI / 6).epsilon(1e-15));
  CHECK(parse_gate("theta:0.25").theta() == 0.25);
  CHECK(parse_gate("theta:0").matrix() == ComplexMatrix4::identity());
  CHECK(parse_gate("theta:pi/4").slug() == "theta_pi_4");
  CHECK(parse_gate("cnot").slug() == "cnot");
  for (const char* bad : {"", "CNOT2", "theta:", "theta:pi/0", "theta:abc", "swap", "theta:pi/4x"})
    CHECK_THROWS_AS(parse_gate(bad), GateParseError);
}

TEST_CASE("apply examples") {
  RngStream rng(42, 0);
  const auto rho = sample_mixed(rng);
  CHECK(max_abs_diff(apply(Gate::identity(), rho).matrix(), rho.matrix()) == 0.0);
  const auto twice = apply(Gate::cnot(), apply(Gate::cnot(), rho));
  CHECK(max_abs_diff(twice.matrix(), rho.matrix()) < 1e-15);

  const auto plus0 = density_from_pure(PureState::product(kInvSqrt2, kInvSqrt2, 1.0, 0.0));
  const auto out = apply(Gate::cnot(), plus0);
  CHECK(max_abs_diff(out.matrix(), bell_density().matrix()) < 1e-15);
  CHECK(double(entanglement_of_formation(plus0)) == 0.0);
  CHECK(double(entanglement_of_formation(out)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply preserves spectrum and purity, carries eigenvectors exactly") {
  RngStream rng(43, 0);
  for (int k = 0; k < 1000; ++k) {
    const auto rho = sample_mixed(rng);
    const Gate g = k % 3 == 0 ? Gate::cnot() : k % 3 == 1 ? Gate::u_theta(rng.uniform() * M_PI)
                                                          : Gate::custom(haar_unitary(rng));
    const auto out = apply(g, rho);
    const auto fresh = hermitian_eigen(out.matrix());
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fresh.values[i] - rho.eigenvalues()[i]) < 1e-9);
    CHECK(std::abs(participation_ratio(out) - participation_ratio(rho)) < 1e-9);
    CHECK(max_abs_diff(out.spectrum().reconstruct(), out.matrix()) < 1e-12);
    CHECK(max_abs_diff(apply(Gate::cnot(), apply(Gate::cnot(), rho)).matrix(), rho.matrix()) < 1e-10);
  }
}

TEST_CASE("analytic concurrences of real pure states after the gates") {
  RngStream rng(44, 0);
  const Gate cx = Gate::cnot(), half = Gate::u_theta(M_PI / 2), quarter = Gate::u_theta(M_PI / 4);
  for (int k = 0; k < 10000; ++k) {
    auto v = random_real_amplitudes(rng);
    if (k % 2) // half the draws restricted to non-negative amplitudes
      for (auto& x : v) x = std::abs(x);
    const auto [a, b, c, d] = v;
    const auto rho = density_from_pure(real_pure(v));
    const double c_cnot = concurrence(apply(cx, rho));
    const double c_half = concurrence(apply(half, rho));
    const double c_quarter = concurrence(apply(quarter, rho));
    CHECK(std::abs(c_cnot * c_cnot - 4.0 * std::pow(a * c - b * d, 2)) < 1e-9);
    CHECK(std::abs(c_half * c_half - 4.0 * std::pow(a * c + b * d, 2)) < 1e-9);
    const double quarter_sq = 2.0 * (a * a + b * b) * (c * c + d * d) +
                              4.0 * ((-a * a + b * b) * c * d + (c * c - d * d) * a * b);
    CHECK(std::abs(c_quarter * c_quarter - quarter_sq) < 1e-9);
  }
}

TEST_CASE("delta_e examples") {
  RngStream rng(45, 0);
  for (int k = 0; k < 100; ++k) {
    const auto rho = sample_mixed(rng);
    const auto d = delta_e(Gate::identity(), rho);
    CHECK(d.delta == 0.0);
    const auto dc = delta_e(Gate::cnot(), rho);
    CHECK(dc.delta == dc.e_final.value - dc.e_initial.value);
    CHECK(std::abs(dc.delta) <= 1.0);
  }
  const auto bell_change = delta_e(Gate::cnot(), bell_density());
  CHECK(double(bell_change.e_initial) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(double(bell_change.e_final) == 0.0);
  CHECK(bell_change.delta == doctest::Approx(-1.0).epsilon(1e-12));

  const auto mixed = delta_e(Gate::cnot(), maximally_mixed());
  CHECK(mixed.delta == 0.0);
}
