#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcpd {

/// Tolerance applied to the trace and positivity checks of an XState.
inline constexpr double kPhysicalityTolerance = 1e-12;

/// One- and two-point nearest-neighbour thermal expectation values:
/// z = <s^z_j>, and ss = <s^s_j s^s_{j+1}> for s = x, y, z.
struct Correlators {
  double z = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;
};

/// Thrown when a density matrix fails the positivity or trace checks by
/// more than kPhysicalityTolerance.
class PhysicalityError : public std::domain_error {
 public:
  PhysicalityError(const std::string& what, double offending_value)
      : std::domain_error(what), offending_value_(offending_value) {}

  /// The eigenvalue (or trace deviation) that failed the check.
  double offending_value() const noexcept { return offending_value_; }

 private:
  double offending_value_;
};

/// Diagonal single-qubit state diag(p0, p1) in the sigma^z eigenbasis.
struct DiagonalQubit {
  double p0 = 0.5;
  double p1 = 0.5;
};

/// Two-qubit X-state
///
///        | a  0  0  e |
///   rho =| 0  b  c  0 |
///        | 0  c  b  0 |
///        | e  0  0  d |
///
/// in the basis |00>, |01>, |10>, |11> with sigma^z diagonal. Instances are
/// always physical: construction validates the trace and positivity and
/// clamps sub-tolerance violations onto the boundary of the state space.
class XState {
 public:
  /// Validating constructor; throws PhysicalityError.
  static XState from_entries(double a, double b, double c, double d, double e);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double e() const noexcept { return e_; }

  /// Closed-form spectrum {b+c, b-c, (a+d+r)/2, (a+d-r)/2} with
  /// r = sqrt((a-d)^2 + 4e^2).
  std::array<double, 4> eigenvalues() const noexcept;

  /// Pauli expectation values recovered from the matrix entries.
  Correlators correlators() const noexcept;

  // Named reference states used throughout the tests and the verify command.
  static XState maximally_mixed();
  static XState bell_phi_plus();
  static XState singlet();

 private:
  XState(double a, double b, double c, double d, double e) noexcept
      : a_(a), b_(b), c_(c), d_(d), e_(e) {}

  double a_, b_, c_, d_, e_;
};

/// Maps correlators onto the X-state entries
///   a = (1 + 2z + zz)/4, b = (1 - zz)/4, c = (xx + yy)/4,
///   d = (1 - 2z + zz)/4, e = (xx - yy)/4.
XState build_xstate(const Correlators& corr);

/// Reduced state of either qubit, diag(a + b, b + d).
DiagonalQubit reduced_single(const XState& rho) noexcept;

/// Explicit 4x4 matrix, for oracle computations.
Eigen::Matrix4d dense_matrix(const XState& rho);

}  // namespace qcpd
