#include "qcpd/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace qcpd {

namespace {

// alpha(eps1, eps2) for the x and y observables.
double alpha_xy(const XState& rho, int eps1, int eps2) noexcept {
  const double a = rho.a();
  const double b = rho.b();
  const double d = rho.d();
  const double ce = rho.c() - eps2 * rho.e();
  const double root = std::sqrt((a - d) * (a - d) + 4.0 * ce * ce);
  return -0.5 * ((a - b) * (a - b) + (b - d) * (b - d) + 2.0 * ce * ce +
                 eps1 * (a - 2.0 * b + d) * root);
}

Eigen::Matrix2cd pauli(Axis axis) {
  using C = std::complex<double>;
  Eigen::Matrix2cd s;
  switch (axis) {
    case Axis::X:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::Y:
      s << 0.0, C(0.0, -1.0), C(0.0, 1.0), 0.0;
      break;
    case Axis::Z:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return s;
}

}  // namespace

std::string_view axis_name(Axis axis) noexcept {
  switch (axis) {
    case Axis::X:
      return "x";
    case Axis::Y:
      return "y";
    case Axis::Z:
      return "z";
  }
  return "?";
}

SpectrumEigenvalues spectrum_eigenvalues(const XState& rho, Axis axis) noexcept {
  SpectrumEigenvalues out{.alpha = {}, .axis = axis};
  double first = 0.0;
  double second = 0.0;
  switch (axis) {
    case Axis::X:
      first = alpha_xy(rho, 1, 1);
      second = alpha_xy(rho, -1, 1);
      break;
    case Axis::Y:
      first = alpha_xy(rho, 1, -1);
      second = alpha_xy(rho, -1, -1);
      break;
    case Axis::Z:
      first = -4.0 * rho.c() * rho.c();
      second = -4.0 * rho.e() * rho.e();
      break;
  }
  out.alpha = {first, first, second, second};
  return out;
}

std::array<double, 4> spectrum_eigenvalues_oracle(const XState& rho, Axis axis) {
  const Eigen::Matrix4cd dense = dense_matrix(rho).cast<std::complex<double>>();
  Eigen::Matrix4cd k;
  k.setZero();
  k.topLeftCorner<2, 2>() = pauli(axis);
  k.bottomRightCorner<2, 2>() = pauli(axis);
  const Eigen::Matrix4cd comm = dense * k - k * dense;
  const Eigen::Matrix4cd square = comm * comm;
  // comm is anti-Hermitian, so its square is Hermitian.
  const Eigen::Matrix4cd herm = 0.5 * (square + square.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

double qc_scalar(const XState& rho, Axis axis) noexcept {
  const auto spec = spectrum_eigenvalues(rho, axis);
  double sum = 0.0;
  for (double a : spec.alpha) sum += a;
  return -0.25 * sum;
}

double coherence_entropy(const XState& rho, Axis axis) noexcept {
  const auto spec = spectrum_eigenvalues(rho, axis);
  double s = 0.0;
  for (double a : spec.alpha) {
    const double m = std::abs(a);
    if (m > 0.0) s -= m * std::log(m);
  }
  return s;
}

DetectorValue log_spectrum(const XState& rho, Axis axis) noexcept {
  const auto spec = spectrum_eigenvalues(rho, axis);
  DetectorValue out;
  out.min_abs_alpha = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double a : spec.alpha) {
    const double m = std::abs(a);
    out.min_abs_alpha = std::min(out.min_abs_alpha, m);
    if (m >= kDivergenceThreshold) sum -= std::log(m);
  }
  out.divergent = out.min_abs_alpha < kDivergenceThreshold;
  out.value = out.divergent ? std::numeric_limits<double>::infinity() : sum;
  return out;
}

}  // namespace qcpd
