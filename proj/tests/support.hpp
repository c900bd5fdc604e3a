#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <cmath>

#include <Eigen/Dense>

#include "entangle/experiments.hpp"

namespace testing {

using namespace entangle;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline PureState bell() { return PureState(kInvSqrt2, 0.0, 0.0, kInvSqrt2); }
inline DensityMatrix bell_density() { return density_from_pure(bell()); }
inline DensityMatrix maximally_mixed() {
  return validate(ComplexMatrix4::diagonal(std::array<double, 4>{0.25, 0.25, 0.25, 0.25}));
}

/// x |Bell><Bell| + (1 - x) I/4
inline DensityMatrix werner(double x) {
  return validate(bell_density().matrix() * Complex(x) + maximally_mixed().matrix() * Complex(1.0 - x));
}

inline Eigen::Matrix4cd to_eigen(const ComplexMatrix4& m) {
  Eigen::Matrix4cd e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  return e;
}

/// Concurrence from the non-Hermitian product rho * rho~ through a general
/// eigensolver; an oracle independent of the library's Hermitian route.
inline double reference_concurrence(const ComplexMatrix4& rho) {
  Eigen::Matrix4cd r = to_eigen(rho);
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd tilde = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r * tilde);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline ComplexMatrix4 random_hermitian(RngStream& rng) {
  ComplexMatrix4 g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = rng.complex_normal();
  return (g + adjoint(g)) * Complex(0.5);
}

/// Random real-coefficient pure state a|00> + b|01> + c|10> + d|11>.
inline std::array<double, 4> random_real_amplitudes(RngStream& rng) {
  std::array<double, 4> v{};
  double n = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    n += x * x;
  }
  for (auto& x : v) x /= std::sqrt(n);
  return v;
}

inline PureState real_pure(const std::array<double, 4>& v) { return PureState(v[0], v[1], v[2], v[3]); }

} // namespace testing
