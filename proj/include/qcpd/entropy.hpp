#pragma once

#include <algorithm>
#include <cmath>

namespace qcpd {

/// -p ln p with 0 ln 0 = 0; p is clamped to [0, 1] first so rounding noise
/// around the spectrum edges never reaches the logarithm.
inline double neg_plogp(double p) noexcept {
  p = std::clamp(p, 0.0, 1.0);
  return p > 0.0 ? -p * std::log(p) : 0.0;
}

}  // namespace qcpd
