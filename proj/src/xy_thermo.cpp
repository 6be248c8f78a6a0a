#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qcpd/models.hpp"

namespace qcpd {

namespace {

// G(r) = (1/pi) int_0^pi tanh(E/2kT)/E [cos(rk)(1 - lambda cos k) - sin(rk) lambda gamma sin k] dk
// with quasiparticle energy E(k) = sqrt((1 - lambda cos k)^2 + (lambda gamma sin k)^2).
double fermion_contraction(int r, double lambda, double gamma, double kT) {
  const auto integrand = [=](double k) {
    const double a = 1.0 - lambda * std::cos(k);
    const double b = lambda * gamma * std::sin(k);
    const double energy = std::hypot(a, b);
    double occupation;  // tanh(E/2kT)/E
    if (energy == 0.0) {
      occupation = kT > 0.0 ? 0.5 / kT : 0.0;
    } else if (kT == 0.0) {
      occupation = 1.0 / energy;
    } else {
      occupation = std::tanh(energy / (2.0 * kT)) / energy;
    }
    return occupation * (std::cos(r * k) * a - std::sin(r * k) * b);
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numbers::pi, 20, 1e-13, &error);
  if (!std::isfinite(value) || error > kXyAbsTolerance) {
    std::ostringstream msg;
    msg << "free-fermion integral did not converge (lambda=" << lambda << ", gamma=" << gamma
        << ", kT=" << kT << ", error estimate " << error << ")";
    throw ComputeError(msg.str());
  }
  return value / std::numbers::pi;
}

}  // namespace

Correlators xy_thermo_correlators(double lambda, double gamma, double kT) {
  if (std::isnan(kT) || kT < 0.0) throw std::invalid_argument("kT must be nonnegative");
  if (!std::isfinite(lambda) || !std::isfinite(gamma)) {
    throw std::invalid_argument("lambda and gamma must be finite");
  }
  if (std::isinf(kT)) return Correlators{};
  const double g0 = fermion_contraction(0, lambda, gamma, kT);
  const double g1 = fermion_contraction(1, lambda, gamma, kT);
  const double gm1 = fermion_contraction(-1, lambda, gamma, kT);
  return Correlators{.z = g0, .xx = -g1, .yy = -gm1, .zz = g0 * g0 - g1 * gm1};
}

}  // namespace qcpd
