#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "qcpd/xstate.hpp"

namespace qcpd {

/// Physical X-state drawn from a flat Dirichlet spectrum and a random
/// rotation of the outer block.
inline XState random_xstate(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  double p[4];
  double total = 0.0;
  for (double& x : p) total += (x = expo(rng));
  for (double& x : p) x /= total;
  const double phi = angle(rng);
  const double cs = std::cos(phi), sn = std::sin(phi);
  const double b = (p[0] + p[1]) / 2.0;
  const double c = (p[0] - p[1]) / 2.0;
  const double a = p[2] * cs * cs + p[3] * sn * sn;
  const double d = p[2] * sn * sn + p[3] * cs * cs;
  const double e = (p[2] - p[3]) * sn * cs;
  return XState::from_entries(a, b, c, d, e);
}

/// Product state diag(p, 1-p) (x) diag(p, 1-p).
inline XState product_xstate(double p) {
  return XState::from_entries(p * p, p * (1.0 - p), 0.0, (1.0 - p) * (1.0 - p), 0.0);
}

}  // namespace qcpd
