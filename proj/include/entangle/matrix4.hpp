#pragma once

// Fixed-size 4x4 complex linear algebra for two-qubit operators.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace entangle {

using Complex = std::complex<double>;
using Vector4 = std::array<Complex, 4>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A Hermitian-only routine received a non-Hermitian matrix (caller bug).
class NotHermitian : public Error {
public:
  explicit NotHermitian(double deviation);
  double deviation;
};

/// psd_sqrt received a matrix with an eigenvalue below -1e-8.
class NotPSD : public Error {
public:
  explicit NotPSD(double min_eigenvalue);
  double min_eigenvalue;
};

/// An internal numerical invariant was broken (e.g. an entanglement value
/// outside [0, 1]). Indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// Row-major 4x4 complex matrix.
class ComplexMatrix4 {
public:
  constexpr ComplexMatrix4() = default;

  static ComplexMatrix4 identity();
  static ComplexMatrix4 diagonal(const std::array<Complex, 4>& d);
  static ComplexMatrix4 diagonal(const std::array<double, 4>& d);
  /// |u><v|
  static ComplexMatrix4 outer(const Vector4& u, const Vector4& v);

  Complex& operator()(std::size_t row, std::size_t col) { return a_[4 * row + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return a_[4 * row + col];
  }

  const std::array<Complex, 16>& entries() const { return a_; }

  ComplexMatrix4& operator+=(const ComplexMatrix4& o);
  ComplexMatrix4& operator-=(const ComplexMatrix4& o);
  ComplexMatrix4& operator*=(Complex s);

  friend ComplexMatrix4 operator+(ComplexMatrix4 a, const ComplexMatrix4& b) { return a += b; }
  friend ComplexMatrix4 operator-(ComplexMatrix4 a, const ComplexMatrix4& b) { return a -= b; }
  friend ComplexMatrix4 operator*(ComplexMatrix4 a, Complex s) { return a *= s; }
  friend ComplexMatrix4 operator*(Complex s, ComplexMatrix4 a) { return a *= s; }
  friend ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b);
  friend Vector4 operator*(const ComplexMatrix4& a, const Vector4& v);

  friend bool operator==(const ComplexMatrix4&, const ComplexMatrix4&) = default;

  Complex trace() const;
  bool all_finite() const;

private:
  std::array<Complex, 16> a_{};
};

ComplexMatrix4 matmul(const ComplexMatrix4& a, const ComplexMatrix4& b);
ComplexMatrix4 adjoint(const ComplexMatrix4& a);
/// Entrywise complex conjugate (no transpose).
ComplexMatrix4 conjugate(const ComplexMatrix4& a);
ComplexMatrix4 transpose(const ComplexMatrix4& a);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix4& a, const ComplexMatrix4& b);
/// Largest |h_ij - conj(h_ji)|.
double hermiticity_deviation(const ComplexMatrix4& h);
double frobenius_norm(const ComplexMatrix4& a);

Complex dot(const Vector4& u, const Vector4& v); // <u|v>, conjugate-linear in u
double norm(const Vector4& v);

/// Eigen-decomposition of a Hermitian matrix.
/// values[i] pairs with vectors[i]; values are non-increasing.
struct Spectrum4 {
  std::array<double, 4> values{};
  std::array<Vector4, 4> vectors{};

  /// V diag(values) V^dagger
  ComplexMatrix4 reconstruct() const;
  /// V diag(f(values)) V^dagger
  template <class F> ComplexMatrix4 apply(F&& f) const {
    ComplexMatrix4 out;
    for (std::size_t k = 0; k < 4; ++k) {
      const double w = f(values[k]);
      if (w == 0.0) continue;
      out += ComplexMatrix4::outer(vectors[k], vectors[k]) * Complex(w, 0.0);
    }
    return out;
  }
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdClampTolerance = 1e-10;
inline constexpr double kPsdHardTolerance = 1e-8;

/// Cyclic complex Jacobi. Throws NotHermitian if the input deviates from its
/// adjoint by more than kHermitianTolerance in any entry.
Spectrum4 hermitian_eigen(const ComplexMatrix4& h);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-8, 0) are clamped to zero; anything lower throws NotPSD.
ComplexMatrix4 psd_sqrt(const ComplexMatrix4& p);
ComplexMatrix4 psd_sqrt(const Spectrum4& s);

/// sigma_y (x) sigma_y in the |00>,|01>,|10>,|11> basis.
ComplexMatrix4 sigma_yy();

} // namespace entangle
