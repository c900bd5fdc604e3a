#include "entangle/state.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <vector>

namespace entangle {

NotNormalized::NotNormalized(double n)
    : Error("pure state is not normalized (norm " + std::to_string(n) + ")"), norm(n) {}

std::string_view to_string(InvalidState::Reason r) {
  switch (r) {
  case InvalidState::Reason::NonFinite: return "non-finite entry";
  case InvalidState::Reason::NotHermitian: return "non-Hermitian";
  case InvalidState::Reason::TraceNotOne: return "trace != 1";
  case InvalidState::Reason::NegativeEigenvalue: return "negative eigenvalue";
  }
  return "unknown";
}

InvalidState::InvalidState(Reason r, double d)
    : Error("invalid density matrix: " + std::string(to_string(r)) + " (" + std::to_string(d) +
            ")"),
      reason(r), detail(d) {}

PureState PureState::normalized(const Vector4& amplitudes) {
  const double n = entangle::norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw NotNormalized(n);
  Vector4 v = amplitudes;
  for (auto& z : v) z /= n;
  return PureState(v);
}

PureState PureState::product(Complex u0, Complex u1, Complex v0, Complex v1) {
  return PureState(u0 * v0, u0 * v1, u1 * v0, u1 * v1);
}

std::array<Vector4, 4> complete_basis(const Vector4& v) {
  std::array<Vector4, 4> basis{};
  const double n = norm(v);
  if (!(n > 0.0)) throw NotNormalized(n);
  for (std::size_t i = 0; i < 4; ++i) basis[0][i] = v[i] / n;

  std::size_t filled = 1;
  // Try the standard basis vectors least aligned with v first.
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(basis[0][a]) < std::abs(basis[0][b]);
  });
  for (std::size_t k : order) {
    if (filled == 4) break;
    Vector4 e{};
    e[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < filled; ++j) {
        const Complex proj = dot(basis[j], e);
        for (std::size_t i = 0; i < 4; ++i) e[i] -= proj * basis[j][i];
      }
    }
    const double r = norm(e);
    if (r < 1e-6) continue;
    for (auto& z : e) z /= r;
    basis[filled++] = e;
  }
  return basis;
}

DensityMatrix DensityMatrix::from_spectrum(const std::array<double, 4>& weights,
                                           const std::array<Vector4, 4>& basis) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw InvalidState(InvalidState::Reason::NonFinite, w);
    if (w < -kPsdClampTolerance) throw InvalidState(InvalidState::Reason::NegativeEigenvalue, w);
    total += w;
  }
  if (std::abs(total - 1.0) > kTraceTolerance)
    throw InvalidState(InvalidState::Reason::TraceNotOne, total);

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  Spectrum4 s;
  for (std::size_t k = 0; k < 4; ++k) {
    s.values[k] = std::max(weights[order[k]], 0.0);
    s.vectors[k] = basis[order[k]];
  }
  return DensityMatrix(s.reconstruct(), s);
}

DensityMatrix DensityMatrix::from_parts(const ComplexMatrix4& matrix, const Spectrum4& spectrum) {
  return DensityMatrix(matrix, spectrum);
}

DensityMatrix density_from_pure(const PureState& psi) {
  const double n = psi.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kPureNormTolerance) throw NotNormalized(n);
  const auto basis = complete_basis(psi.amplitudes());
  Spectrum4 s;
  s.values = {1.0, 0.0, 0.0, 0.0};
  s.vectors = basis;
  return DensityMatrix::from_parts(ComplexMatrix4::outer(psi.amplitudes(), psi.amplitudes()), s);
}

DensityMatrix validate(const ComplexMatrix4& raw) {
  using R = InvalidState::Reason;
  if (!raw.all_finite()) throw InvalidState(R::NonFinite, 0.0);
  const double dev = hermiticity_deviation(raw);
  if (dev > kHermitianTolerance) throw InvalidState(R::NotHermitian, dev);
  const Complex tr = raw.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) throw InvalidState(R::TraceNotOne, tr.real());
  Spectrum4 s = hermitian_eigen(raw);
  if (s.values[3] < -kPsdClampTolerance) throw InvalidState(R::NegativeEigenvalue, s.values[3]);
  for (auto& x : s.values) x = std::max(x, 0.0);
  return DensityMatrix::from_parts(raw, s);
}

ComplexMatrix4 partial_transpose(const ComplexMatrix4& m) {
  ComplexMatrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + l, 2 * k + j) = m(2 * i + j, 2 * k + l);
  return out;
}

ComplexMatrix4 partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.matrix()); }

StateParseError::StateParseError(std::size_t ln, std::size_t col, const std::string& what)
    : Error("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " + what),
      line(ln), column(col) {}

namespace {

void append_number(std::string& out, double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, res.ptr);
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

} // namespace

std::string serialize(const ComplexMatrix4& m) {
  std::string out;
  for (std::size_t k = 0; k < 16; ++k) {
    if (k) out += ',';
    append_number(out, m.entries()[k].real());
    out += ',';
    append_number(out, m.entries()[k].imag());
  }
  return out;
}

std::string serialize(const DensityMatrix& rho) { return serialize(rho.matrix()); }

ComplexMatrix4 parse_matrix(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::string_view line;
  bool found = false;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view cand = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (std::all_of(cand.begin(), cand.end(), is_blank)) {
      if (eol == text.size()) break;
      continue;
    }
    line = cand;
    found = true;
    break;
  }
  if (!found) throw StateParseError(line_no == 0 ? 1 : line_no, 1, "empty state file");

  std::vector<double> values;
  std::size_t i = 0;
  while (true) {
    std::size_t start = i;
    while (start < line.size() && is_blank(line[start])) ++start;
    std::size_t end = start;
    while (end < line.size() && line[end] != ',') ++end;
    std::size_t tok_end = end;
    while (tok_end > start && is_blank(line[tok_end - 1])) --tok_end;
    const std::size_t column = start + 1;
    if (values.size() == 32)
      throw StateParseError(line_no, column, "expected 32 numbers, found more");
    if (tok_end == start) throw StateParseError(line_no, column, "missing number");
    double x = 0.0;
    const char* first = line.data() + start;
    const char* last = line.data() + tok_end;
    if (*first == '+') ++first;
    auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(x))
      throw StateParseError(line_no, column,
                            "bad number '" + std::string(line.substr(start, tok_end - start)) + "'");
    values.push_back(x);
    if (end >= line.size()) break;
    i = end + 1;
  }
  if (values.size() != 32)
    throw StateParseError(line_no, line.size() + 1,
                          "expected 32 numbers, found " + std::to_string(values.size()));

  // Anything after the state line must be blank.
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view rest = text.substr(pos, eol - pos);
    for (std::size_t c = 0; c < rest.size(); ++c)
      if (!is_blank(rest[c])) throw StateParseError(line_no, c + 1, "unexpected content after state");
    pos = eol + 1;
  }

  ComplexMatrix4 m;
  for (std::size_t k = 0; k < 16; ++k) m(k / 4, k % 4) = Complex(values[2 * k], values[2 * k + 1]);
  return m;
}

} // namespace entangle
