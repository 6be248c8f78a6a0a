#pragma once

#include <array>
#include <string_view>

#include "qcpd/xstate.hpp"

namespace qcpd {

/// Local observable K = 1 (x) sigma^axis acting on the second qubit.
enum class Axis { X, Y, Z };

std::string_view axis_name(Axis axis) noexcept;

/// |alpha| below which the logarithm of the spectrum is reported divergent.
inline constexpr double kDivergenceThreshold = 1e-12;

/// Eigenvalues of [rho, K]^2, each listed with its multiplicity (two
/// doubly-degenerate pairs).
struct SpectrumEigenvalues {
  std::array<double, 4> alpha{};
  Axis axis = Axis::Z;
};

/// A detector reading that may be undefined. Consumers must branch on
/// `divergent` before using `value`.
struct DetectorValue {
  double value = 0.0;
  bool divergent = false;
  double min_abs_alpha = 0.0;
};

/// Closed-form spectrum of [rho, 1 (x) sigma^axis]^2.
SpectrumEigenvalues spectrum_eigenvalues(const XState& rho, Axis axis) noexcept;

/// Same spectrum from an explicit dense 4x4 commutator and a numerical
/// eigensolve, sorted ascending. Independent of the closed form.
std::array<double, 4> spectrum_eigenvalues_oracle(const XState& rho, Axis axis);

/// QC(K) = -Tr{[rho, K]^2} / 4.
double qc_scalar(const XState& rho, Axis axis) noexcept;

/// Coherence entropy -sum |alpha| ln |alpha|; always finite.
double coherence_entropy(const XState& rho, Axis axis) noexcept;

/// Logarithm of the spectrum -sum ln |alpha|. Divergent (value = +inf) when
/// any |alpha| < kDivergenceThreshold.
DetectorValue log_spectrum(const XState& rho, Axis axis) noexcept;

}  // namespace qcpd
