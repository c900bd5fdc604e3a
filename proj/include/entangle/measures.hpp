#pragma once

// Scalar functionals of a two-qubit state: Wootters concurrence,
// entanglement of formation, purity-type measures and the PPT test.

#include <array>

#include "entangle/state.hpp"

namespace entangle {

class DomainError : public Error {
public:
  using Error::Error;
};

/// A concurrence or entanglement value, clamped into [0, 1].
struct EntanglementValue {
  double value = 0.0;

  EntanglementValue() = default;
  /// Clamps round-off overshoot; throws InvariantViolation if x is NaN or
  /// more than 1e-9 outside [0, 1].
  explicit EntanglementValue(double x);

  operator double() const { return value; }
};

/// (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y), in the product basis.
ComplexMatrix4 spin_flip(const ComplexMatrix4& rho);
ComplexMatrix4 spin_flip(const DensityMatrix& rho);

/// Square roots of the eigenvalues of rho * spin_flip(rho), non-increasing.
std::array<double, 4> wootters_lambdas(const DensityMatrix& rho);

EntanglementValue concurrence(const DensityMatrix& rho);

/// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0. DomainError outside
/// [0, 1] beyond 1e-12 slack.
double binary_entropy(double x);

/// h((1 + sqrt(1 - C^2)) / 2), evaluated without cancellation for small C.
EntanglementValue entanglement_from_concurrence(double c);
EntanglementValue entanglement_of_formation(const DensityMatrix& rho);

/// 1 / Tr(rho^2); 1 for pure states, 4 for I/4.
double participation_ratio(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);
/// -Tr(rho ln rho), natural log.
double von_neumann_entropy(const DensityMatrix& rho);
/// Tr(rho^q), q > 0.
double q_moment(const DensityMatrix& rho, double q);

inline constexpr double kPptTolerance = 1e-10;

double min_partial_transpose_eigenvalue(const DensityMatrix& rho);
/// Peres-Horodecki: exact separability test for two qubits.
bool is_ppt_separable(const DensityMatrix& rho);

} // namespace entangle
