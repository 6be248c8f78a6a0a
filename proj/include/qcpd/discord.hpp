#pragma once

#include "qcpd/xstate.hpp"

namespace qcpd {

struct DiscordResult {
  /// Quantum discord in nats, in [0, 1].
  double value = 0.0;
  /// Measurement angle minimizing the conditional entropy, in [0, pi/2].
  double theta_star = 0.0;
};

/// Number of points of the coarse theta grid scanned before refinement.
inline constexpr int kDiscordGridPoints = 1001;
/// Width at which the golden-section refinement stops.
inline constexpr double kDiscordThetaTolerance = 1e-9;

/// Von Neumann entropy (nats) of the single-qubit marginal.
double entropy_single(const XState& rho) noexcept;

/// Von Neumann entropy (nats) of the two-qubit X-state.
double entropy_pair(const XState& rho) noexcept;

/// Measurement-dependent entropy difference
///   S~(theta) = L1 ln L1 + L2 ln L2 - sum_j l_j ln l_j,
/// whose minimum over theta in [0, pi/2] enters the discord.
double s_tilde(const XState& rho, double theta) noexcept;

/// QD = S(rho_3) - S(rho_23) + min_theta S~(theta). The minimum is located
/// on a kDiscordGridPoints grid and then refined by golden-section search.
DiscordResult quantum_discord(const XState& rho);

}  // namespace qcpd
