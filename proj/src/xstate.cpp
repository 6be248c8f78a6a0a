#include "qcpd/xstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcpd {

namespace {

std::array<double, 4> x_spectrum(double a, double b, double c, double d, double e) noexcept {
  const double r = std::sqrt((a - d) * (a - d) + 4.0 * e * e);
  return {b + c, b - c, 0.5 * (a + d + r), 0.5 * (a + d - r)};
}

}  // namespace

XState XState::from_entries(double a, double b, double c, double d, double e) {
  for (double v : {a, b, c, d, e}) {
    if (!std::isfinite(v)) {
      throw PhysicalityError("X-state entry is not finite", v);
    }
  }
  const double trace_error = a + 2.0 * b + d - 1.0;
  if (std::abs(trace_error) > kPhysicalityTolerance) {
    std::ostringstream msg;
    msg << "X-state trace a + 2b + d deviates from 1 by " << trace_error;
    throw PhysicalityError(msg.str(), trace_error);
  }
  const auto spectrum = x_spectrum(a, b, c, d, e);
  const double lowest = *std::min_element(spectrum.begin(), spectrum.end());
  if (lowest < -kPhysicalityTolerance) {
    std::ostringstream msg;
    msg << "X-state is not positive semidefinite: eigenvalue " << lowest
        << " (a=" << a << ", b=" << b << ", c=" << c << ", d=" << d << ", e=" << e << ")";
    throw PhysicalityError(msg.str(), lowest);
  }

  // Within tolerance: project onto the boundary so later logarithms see
  // nonnegative arguments.
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);
  d = std::max(d, 0.0);
  if (std::abs(c) > b) c = std::copysign(b, c);
  if (e * e > a * d) e = std::copysign(std::sqrt(a * d), e);
  return XState(a, b, c, d, e);
}

std::array<double, 4> XState::eigenvalues() const noexcept {
  return x_spectrum(a_, b_, c_, d_, e_);
}

Correlators XState::correlators() const noexcept {
  // Inverse of build_xstate.
  return Correlators{
      .z = a_ - d_,
      .xx = 2.0 * (c_ + e_),
      .yy = 2.0 * (c_ - e_),
      .zz = a_ - 2.0 * b_ + d_,
  };
}

XState XState::maximally_mixed() { return XState(0.25, 0.25, 0.0, 0.25, 0.0); }
XState XState::bell_phi_plus() { return XState(0.5, 0.0, 0.0, 0.5, 0.5); }
XState XState::singlet() { return XState(0.0, 0.5, -0.5, 0.0, 0.0); }

XState build_xstate(const Correlators& corr) {
  return XState::from_entries((1.0 + 2.0 * corr.z + corr.zz) / 4.0, (1.0 - corr.zz) / 4.0,
                              (corr.xx + corr.yy) / 4.0, (1.0 - 2.0 * corr.z + corr.zz) / 4.0,
                              (corr.xx - corr.yy) / 4.0);
}

DiagonalQubit reduced_single(const XState& rho) noexcept {
  return DiagonalQubit{rho.a() + rho.b(), rho.b() + rho.d()};
}

Eigen::Matrix4d dense_matrix(const XState& rho) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = rho.a();
  m(1, 1) = rho.b();
  m(2, 2) = rho.b();
  m(3, 3) = rho.d();
  m(1, 2) = m(2, 1) = rho.c();
  m(0, 3) = m(3, 0) = rho.e();
  return m;
}

}  // namespace qcpd
