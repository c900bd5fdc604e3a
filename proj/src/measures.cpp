#include "entangle/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace entangle {

EntanglementValue::EntanglementValue(double x) {
  if (std::isnan(x) || x < -1e-9 || x > 1.0 + 1e-9)
    throw InvariantViolation("entanglement value out of [0,1]: " + std::to_string(x));
  value = std::clamp(x, 0.0, 1.0);
}

ComplexMatrix4 spin_flip(const ComplexMatrix4& rho) {
  // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1) is real, so the product
  // reduces to a signed index reversal of rho*.
  static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
  ComplexMatrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out(i, j) = sign[i] * sign[j] * std::conj(rho(3 - i, 3 - j));
  return out;
}

ComplexMatrix4 spin_flip(const DensityMatrix& rho) { return spin_flip(rho.matrix()); }

std::array<double, 4> wootters_lambdas(const DensityMatrix& rho) {
  // rho * rho~ shares its spectrum with M = sqrt(rho) rho~ sqrt(rho) = A A^dagger,
  // A = sqrt(rho) Y sqrt(rho)*. M is Hermitian PSD, so the Jacobi kernel
  // applies. lambda_k is taken as ||A^dagger v_k|| rather than sqrt(mu_k):
  // the same number, but without sqrt amplifying round-off in the
  // near-zero eigenvalues.
  const ComplexMatrix4 root = psd_sqrt(rho.spectrum());
  const ComplexMatrix4 a = root * sigma_yy() * conjugate(root);
  const ComplexMatrix4 a_dag = adjoint(a);
  const ComplexMatrix4 m = a * a_dag;
  const Spectrum4 s = hermitian_eigen(m);
  if (s.values[3] < -kPsdClampTolerance)
    throw InvariantViolation("rho * rho~ has eigenvalue " + std::to_string(s.values[3]));

  std::array<double, 4> lambdas{};
  for (std::size_t k = 0; k < 4; ++k) lambdas[k] = norm(a_dag * s.vectors[k]);
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return lambdas;
}

EntanglementValue concurrence(const DensityMatrix& rho) {
  const auto l = wootters_lambdas(rho);
  const double c = l[0] - l[1] - l[2] - l[3];
  return EntanglementValue(std::max(0.0, c));
}

double binary_entropy(double x) {
  if (std::isnan(x) || x < -1e-12 || x > 1.0 + 1e-12)
    throw DomainError("binary_entropy argument outside [0,1]: " + std::to_string(x));
  x = std::clamp(x, 0.0, 1.0);
  if (x == 0.0 || x == 1.0) return 0.0;
  return -(x * std::log2(x) + (1.0 - x) * std::log1p(-x) / std::numbers::ln2);
}

EntanglementValue entanglement_from_concurrence(double c) {
  if (std::isnan(c) || c < -1e-9 || c > 1.0 + 1e-9)
    throw InvariantViolation("concurrence out of [0,1]: " + std::to_string(c));
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return EntanglementValue(0.0);
  // Smaller root (1 - sqrt(1-C^2))/2 written without cancellation; h is
  // symmetric so either root gives the same entropy.
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  const double y = c * c / (2.0 * (1.0 + s));
  const double h = -(y * std::log2(y) + (1.0 - y) * std::log1p(-y) / std::numbers::ln2);
  return EntanglementValue(h);
}

EntanglementValue entanglement_of_formation(const DensityMatrix& rho) {
  return entanglement_from_concurrence(concurrence(rho).value);
}

double purity(const DensityMatrix& rho) {
  double s = 0.0;
  for (double p : rho.eigenvalues()) s += p * p;
  return s;
}

double participation_ratio(const DensityMatrix& rho) { return 1.0 / purity(rho); }

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double p : rho.eigenvalues())
    if (p > 0.0) s -= p * std::log(p);
  return std::max(s, 0.0);
}

double q_moment(const DensityMatrix& rho, double q) {
  if (!(q > 0.0)) throw DomainError("q_moment requires q > 0, got " + std::to_string(q));
  double s = 0.0;
  for (double p : rho.eigenvalues())
    if (p > 0.0) s += std::pow(p, q);
  return s;
}

double min_partial_transpose_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigen(partial_transpose(rho)).values[3];
}

bool is_ppt_separable(const DensityMatrix& rho) {
  return min_partial_transpose_eigenvalue(rho) >= -kPptTolerance;
}

} // namespace entangle
