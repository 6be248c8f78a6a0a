#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcpd/models.hpp"

namespace qcpd {

namespace {

constexpr double kSeriesCutoff = 1e-15;

// sum_{j in Z} (-1)^j / cosh(j eta), summed directly. Converges fast for
// large eta.
double alternating_sech_direct(double eta) {
  double sum = 1.0;
  for (int j = 1;; ++j) {
    const double term = 2.0 / std::cosh(j * eta);
    sum += (j % 2 == 0) ? term : -term;
    if (term < kSeriesCutoff) break;
  }
  return sum;
}

// Same sum after Poisson resummation,
// (2 pi / eta) sum_{m >= 0} sech(pi^2 (2m + 1) / (2 eta)); accurate for small
// eta where the direct sum cancels catastrophically.
double alternating_sech_dual(double eta) {
  const double scale = std::numbers::pi * std::numbers::pi / (2.0 * eta);
  double sum = 0.0;
  for (int m = 0;; ++m) {
    const double x = scale * (2 * m + 1);
    const double term = x > 700.0 ? 0.0 : 1.0 / std::cosh(x);
    sum += term;
    if (term < kSeriesCutoff * std::max(sum, 1e-300) || term == 0.0) break;
  }
  return 2.0 * std::numbers::pi / eta * sum;
}

}  // namespace

double xxz_delta1(double field, double coupling) noexcept { return field / (4.0 * coupling) - 1.0; }

double xxz_delta2_field(double eta) {
  if (!(eta > 0.0)) throw std::domain_error("eta must be positive");
  const double series = eta < 1.5 ? alternating_sech_dual(eta) : alternating_sech_direct(eta);
  return 4.0 * std::sinh(eta) * series;
}

double xxz_delta2(double field) {
  if (field == 0.0) return 1.0;
  if (!(field > 0.0) || !std::isfinite(field)) {
    std::ostringstream msg;
    msg << "delta2 equation has no root for field " << field;
    throw std::domain_error(msg.str());
  }
  double lo = 1e-3;
  double hi = 1.0;
  if (xxz_delta2_field(lo) >= field) {
    throw std::domain_error("field too small to bracket the delta2 root");
  }
  while (xxz_delta2_field(hi) < field) {
    hi *= 2.0;
    if (hi > 700.0) throw std::domain_error("field too large to bracket the delta2 root");
  }
  const double tolerance = 1e-10 * std::min(1.0, field);
  double mid = 0.5 * (lo + hi);
  while (hi - lo > 1e-15 * hi) {
    mid = 0.5 * (lo + hi);
    const double value = xxz_delta2_field(mid);
    if (std::abs(value - field) < tolerance) break;
    (value < field ? lo : hi) = mid;
  }
  return std::cosh(mid);
}

}  // namespace qcpd
