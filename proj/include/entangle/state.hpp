#pragma once

// Two-qubit states in the product basis |00>, |01>, |10>, |11>
// (first label = first qubit = control qubit for the gates).

#include <cstddef>
#include <string>
#include <string_view>

#include "entangle/matrix4.hpp"

namespace entangle {

class NotNormalized : public Error {
public:
  explicit NotNormalized(double norm);
  double norm;
};

class InvalidState : public Error {
public:
  enum class Reason { NonFinite, NotHermitian, TraceNotOne, NegativeEigenvalue };
  InvalidState(Reason reason, double detail);
  Reason reason;
  double detail;
};

std::string_view to_string(InvalidState::Reason r);

/// Amplitudes (a, b, c, d) of a|00> + b|01> + c|10> + d|11>. Holds whatever
/// it is given; use normalized() or check norm() before building densities.
class PureState {
public:
  PureState() = default;
  explicit PureState(const Vector4& amplitudes) : amp_(amplitudes) {}
  PureState(Complex a, Complex b, Complex c, Complex d) : amp_{a, b, c, d} {}

  /// Rescales to unit norm. Throws NotNormalized for a zero vector.
  static PureState normalized(const Vector4& amplitudes);
  /// (|first0>|0> ... ) product |u> (x) |v> of two one-qubit states.
  static PureState product(Complex u0, Complex u1, Complex v0, Complex v1);

  const Vector4& amplitudes() const { return amp_; }
  const Complex& operator[](std::size_t i) const { return amp_[i]; }
  double norm() const { return entangle::norm(amp_); }

private:
  Vector4 amp_{};
};

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPureNormTolerance = 1e-9;

/// A validated density matrix with its spectrum. Immutable once built; every
/// factory fills the spectrum eagerly so the object can be shared freely.
class DensityMatrix {
public:
  const ComplexMatrix4& matrix() const { return matrix_; }
  /// Eigen-decomposition; negative round-off eigenvalues clamped to 0.
  const Spectrum4& spectrum() const { return spectrum_; }
  const std::array<double, 4>& eigenvalues() const { return spectrum_.values; }

  /// Builds from an orthonormal eigenbasis and non-negative weights summing
  /// to one. Used by samplers and gate application, whose spectra are known
  /// exactly by construction. Weights need not be sorted.
  static DensityMatrix from_spectrum(const std::array<double, 4>& weights,
                                     const std::array<Vector4, 4>& basis);

  /// Trusted assembly from a matrix and its already-known spectrum.
  static DensityMatrix from_parts(const ComplexMatrix4& matrix, const Spectrum4& spectrum);

private:
  DensityMatrix(const ComplexMatrix4& m, const Spectrum4& s) : matrix_(m), spectrum_(s) {}
  ComplexMatrix4 matrix_;
  Spectrum4 spectrum_;
};

/// |psi><psi|. Throws NotNormalized if | ||psi|| - 1 | > 1e-9.
DensityMatrix density_from_pure(const PureState& psi);

/// Checks Hermiticity, unit trace and PSD; throws InvalidState otherwise.
DensityMatrix validate(const ComplexMatrix4& raw);

/// Transpose on the second qubit: ((i,j),(k,l)) -> ((i,l),(k,j)).
ComplexMatrix4 partial_transpose(const ComplexMatrix4& m);
ComplexMatrix4 partial_transpose(const DensityMatrix& rho);

/// Completes {v} to an orthonormal basis; result[0] is v / ||v||.
std::array<Vector4, 4> complete_basis(const Vector4& v);

// Text form: 16 "re,im" pairs in row-major order on one line, i.e. 32
// comma-separated numbers.

class StateParseError : public Error {
public:
  StateParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line;
  std::size_t column;
};

std::string serialize(const ComplexMatrix4& m);
std::string serialize(const DensityMatrix& rho);
/// Parses the first non-blank line. Line and column in errors are 1-based.
ComplexMatrix4 parse_matrix(std::string_view text);

} // namespace entangle
