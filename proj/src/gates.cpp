#include "entangle/gates.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace entangle {

NotUnitary::NotUnitary(double dev)
    : Error("matrix is not unitary (max |UU^dagger - I| = " + std::to_string(dev) + ")"),
      deviation(dev) {}

namespace {

ComplexMatrix4 block_gate(Complex b00, Complex b01, Complex b10, Complex b11) {
  ComplexMatrix4 u;
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 2) = b00;
  u(2, 3) = b01;
  u(3, 2) = b10;
  u(3, 3) = b11;
  return u;
}

std::string format_radians(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

// "[k][*]pi[/m]" with optional leading sign; k and m may be decimals.
bool parse_pi_multiple(std::string_view s, double& out) {
  s = trim(s);
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return false;
  std::string_view num = trim(s.substr(0, pi_pos));
  std::string_view den = trim(s.substr(pi_pos + 2));
  if (!num.empty() && num.back() == '*') num = trim(num.substr(0, num.size() - 1));
  double k = 1.0;
  if (num == "-") {
    k = -1.0;
  } else if (num == "+" || num.empty()) {
    k = 1.0;
  } else if (!parse_double(num, k)) {
    return false;
  }
  double m = 1.0;
  if (!den.empty()) {
    if (den.front() != '/') return false;
    if (!parse_double(den.substr(1), m) || m == 0.0) return false;
  }
  out = k * std::numbers::pi / m;
  return true;
}

} // namespace

Gate Gate::identity() {
  return Gate(ComplexMatrix4::identity(), Kind::Identity, 0.0, "identity");
}

Gate Gate::cnot() { return Gate(block_gate(0.0, 1.0, 1.0, 0.0), Kind::Cnot, 0.0, "cnot"); }

Gate Gate::u_theta(double theta, std::string spelling) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (spelling.empty()) spelling = "theta:" + format_radians(theta);
  return Gate(block_gate(c, s, -s, c), Kind::Theta, theta, std::move(spelling));
}

Gate Gate::custom(const ComplexMatrix4& u, std::string label) {
  if (!u.all_finite()) throw NotUnitary(std::numeric_limits<double>::infinity());
  const double dev = max_abs_diff(u * adjoint(u), ComplexMatrix4::identity());
  if (dev > kUnitaryTolerance) throw NotUnitary(dev);
  return Gate(u, Kind::Custom, 0.0, std::move(label));
}

std::string Gate::slug() const {
  std::string out;
  for (char ch : label_) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-')
      out += ch;
    else if (ch == '*')
      continue;
    else
      out += '_';
  }
  return out;
}

Gate parse_gate(std::string_view spec) {
  const std::string_view s = trim(spec);
  if (s == "cnot") return Gate::cnot();
  if (s == "identity") return Gate::identity();
  constexpr std::string_view prefix = "theta:";
  if (s.substr(0, prefix.size()) == prefix) {
    const std::string_view arg = trim(s.substr(prefix.size()));
    double theta = 0.0;
    if (parse_pi_multiple(arg, theta) || parse_double(arg, theta))
      return Gate::u_theta(theta, "theta:" + std::string(arg));
  }
  throw GateParseError("unrecognized gate '" + std::string(spec) +
                       "' (expected cnot, identity, theta:<radians> or theta:pi/4 style)");
}

DensityMatrix apply(const ComplexMatrix4& u, const DensityMatrix& rho) {
  const ComplexMatrix4 out = u * rho.matrix() * adjoint(u);
  Spectrum4 s = rho.spectrum();
  for (auto& v : s.vectors) v = u * v;
  return DensityMatrix::from_parts(out, s);
}

DensityMatrix apply(const Gate& g, const DensityMatrix& rho) { return apply(g.matrix(), rho); }

DeltaE delta_e(const Gate& g, const DensityMatrix& rho) {
  DeltaE d;
  d.e_initial = entanglement_of_formation(rho);
  d.e_final = entanglement_of_formation(apply(g, rho));
  d.delta = d.e_final.value - d.e_initial.value;
  return d;
}

} // namespace entangle
