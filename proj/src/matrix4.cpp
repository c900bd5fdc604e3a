#include "entangle/matrix4.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace entangle {

NotHermitian::NotHermitian(double dev)
    : Error("matrix is not Hermitian (max deviation " + std::to_string(dev) + ")"),
      deviation(dev) {}

NotPSD::NotPSD(double min_ev)
    : Error("matrix is not positive semidefinite (min eigenvalue " + std::to_string(min_ev) +
            ")"),
      min_eigenvalue(min_ev) {}

ComplexMatrix4 ComplexMatrix4::identity() {
  return diagonal(std::array<double, 4>{1.0, 1.0, 1.0, 1.0});
}

ComplexMatrix4 ComplexMatrix4::diagonal(const std::array<Complex, 4>& d) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix4 ComplexMatrix4::diagonal(const std::array<double, 4>& d) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix4 ComplexMatrix4::outer(const Vector4& u, const Vector4& v) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix4& ComplexMatrix4::operator+=(const ComplexMatrix4& o) {
  for (std::size_t k = 0; k < 16; ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix4& ComplexMatrix4::operator-=(const ComplexMatrix4& o) {
  for (std::size_t k = 0; k < 16; ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix4& ComplexMatrix4::operator*=(Complex s) {
  for (auto& x : a_) x *= s;
  return *this;
}

ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  ComplexMatrix4 c;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < 4; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector4 operator*(const ComplexMatrix4& a, const Vector4& v) {
  Vector4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += a(i, j) * v[j];
  return out;
}

Complex ComplexMatrix4::trace() const { return a_[0] + a_[5] + a_[10] + a_[15]; }

bool ComplexMatrix4::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix4 matmul(const ComplexMatrix4& a, const ComplexMatrix4& b) { return a * b; }

ComplexMatrix4 adjoint(const ComplexMatrix4& a) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = std::conj(a(j, i));
  return m;
}

ComplexMatrix4 conjugate(const ComplexMatrix4& a) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = std::conj(a(i, j));
  return m;
}

ComplexMatrix4 transpose(const ComplexMatrix4& a) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = a(j, i);
  return m;
}

double max_abs_diff(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 16; ++k)
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

double hermiticity_deviation(const ComplexMatrix4& h) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) d = std::max(d, std::abs(h(i, j) - std::conj(h(j, i))));
  return d;
}

double frobenius_norm(const ComplexMatrix4& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

Complex dot(const Vector4& u, const Vector4& v) {
  Complex s{};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(const Vector4& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix4 Spectrum4::reconstruct() const {
  return apply([](double x) { return x; });
}

namespace {

double off_diagonal_norm2(const ComplexMatrix4& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagonalTarget = 1e-14;

} // namespace

Spectrum4 hermitian_eigen(const ComplexMatrix4& h) {
  if (!h.all_finite()) throw NotHermitian(std::numeric_limits<double>::infinity());
  const double dev = hermiticity_deviation(h);
  if (dev > kHermitianTolerance) throw NotHermitian(dev);

  // Work on the exactly Hermitian part.
  ComplexMatrix4 a;
  for (std::size_t i = 0; i < 4; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix4 v = ComplexMatrix4::identity();

  const double scale2 = std::max(frobenius_norm(a) * frobenius_norm(a), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= kOffDiagonalTarget * kOffDiagonalTarget * scale2) break;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // Real symmetric 2x2 [[app, g], [g, aqq]] after removing the phase.
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary acting on columns p, q: [[c, s], [-conj(phase) s, conj(phase) c]].
        const Complex rpp = c;
        const Complex rpq = s;
        const Complex rqp = -std::conj(phase) * s;
        const Complex rqq = std::conj(phase) * c;

        for (std::size_t k = 0; k < 4; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * rpp + akq * rqp;
          a(k, q) = akp * rpq + akq * rqq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(rpp) * apk + std::conj(rqp) * aqk;
          a(q, k) = std::conj(rpq) * apk + std::conj(rqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < 4; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * rpp + vkq * rqp;
          v(k, q) = vkp * rpq + vkq * rqq;
        }
      }
    }
  }

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  Spectrum4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    for (std::size_t i = 0; i < 4; ++i) out.vectors[k][i] = v(i, src);
  }
  return out;
}

ComplexMatrix4 psd_sqrt(const Spectrum4& s) {
  const double min_ev = s.values[3];
  if (min_ev < -kPsdHardTolerance) throw NotPSD(min_ev);
  return s.apply([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix4 psd_sqrt(const ComplexMatrix4& p) { return psd_sqrt(hermitian_eigen(p)); }

ComplexMatrix4 sigma_yy() {
  // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1)
  ComplexMatrix4 m;
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

} // namespace entangle
