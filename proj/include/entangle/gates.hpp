#pragma once

#include <string>
#include <string_view>

#include "entangle/measures.hpp"
#include "entangle/state.hpp"

namespace entangle {

class NotUnitary : public Error {
public:
  explicit NotUnitary(double deviation);
  double deviation;
};

class GateParseError : public Error {
public:
  using Error::Error;
};

inline constexpr double kUnitaryTolerance = 1e-10;

/// Two-qubit unitary with a symbolic tag. All built-in gates are
/// block-diagonal: identity on the control=0 block, a 2x2 block on control=1.
class Gate {
public:
  enum class Kind { Identity, Cnot, Theta, Custom };

  static Gate identity();
  static Gate cnot();
  /// Lower block [[cos t, sin t], [-sin t, cos t]]. `spelling` overrides the
  /// label (e.g. "theta:pi/4").
  static Gate u_theta(double theta, std::string spelling = {});
  /// Throws NotUnitary if ||U U^dagger - I||_max > 1e-10.
  static Gate custom(const ComplexMatrix4& u, std::string label = "custom");

  const ComplexMatrix4& matrix() const { return u_; }
  Kind kind() const { return kind_; }
  double theta() const { return theta_; }
  /// Grammar spelling: "cnot", "identity", "theta:<...>", or the custom label.
  const std::string& label() const { return label_; }
  /// Label safe for file names: "theta:pi/4" -> "theta_pi_4".
  std::string slug() const;

private:
  Gate(const ComplexMatrix4& u, Kind k, double theta, std::string label)
      : u_(u), kind_(k), theta_(theta), label_(std::move(label)) {}
  ComplexMatrix4 u_;
  Kind kind_;
  double theta_;
  std::string label_;
};

/// "cnot" | "identity" | "theta:<radians>" | "theta:[k][*]pi[/m]".
Gate parse_gate(std::string_view spec);

/// U rho U^dagger. The spectrum is carried over exactly (eigenvectors
/// rotated by U), so no re-diagonalization happens.
DensityMatrix apply(const Gate& g, const DensityMatrix& rho);
DensityMatrix apply(const ComplexMatrix4& u, const DensityMatrix& rho);

struct DeltaE {
  EntanglementValue e_initial;
  EntanglementValue e_final;
  double delta = 0.0; // e_final - e_initial
};

DeltaE delta_e(const Gate& g, const DensityMatrix& rho);

} // namespace entangle
