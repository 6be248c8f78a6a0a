#include "qcpd/discord.hpp"

#include <cmath>
#include <numbers>

#include "qcpd/entropy.hpp"

namespace qcpd {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Golden-section search for a minimum of f on [lo, hi].
template <typename F>
std::pair<double, double> golden_section_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

double entropy_single(const XState& rho) noexcept {
  return neg_plogp(rho.a() + rho.b()) + neg_plogp(rho.b() + rho.d());
}

double entropy_pair(const XState& rho) noexcept {
  double s = 0.0;
  for (double p : rho.eigenvalues()) s += neg_plogp(p);
  return s;
}

double s_tilde(const XState& rho, double theta) noexcept {
  const double a = rho.a();
  const double b = rho.b();
  const double d = rho.d();
  const double ce = std::abs(rho.c()) + std::abs(rho.e());
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);

  const double big1 = 0.5 * (1.0 + (a - d) * cos_t);
  const double big2 = 0.5 * (1.0 - (a - d) * cos_t);

  const double off = 4.0 * ce * ce * sin_t * sin_t;
  const double u = a - d + (a - 2.0 * b + d) * cos_t;
  const double v = a - d - (a - 2.0 * b + d) * cos_t;
  const double root_u = std::sqrt(u * u + off);
  const double root_v = std::sqrt(v * v + off);
  const double small1 = 0.25 * (1.0 + (a - d) * cos_t + root_u);
  const double small2 = 0.25 * (1.0 + (a - d) * cos_t - root_u);
  const double small3 = 0.25 * (1.0 - (a - d) * cos_t + root_v);
  const double small4 = 0.25 * (1.0 - (a - d) * cos_t - root_v);

  return -neg_plogp(big1) - neg_plogp(big2) + neg_plogp(small1) + neg_plogp(small2) +
         neg_plogp(small3) + neg_plogp(small4);
}

DiscordResult quantum_discord(const XState& rho) {
  const auto f = [&rho](double theta) { return s_tilde(rho, theta); };

  const double step = kHalfPi / (kDiscordGridPoints - 1);
  int best = 0;
  double best_value = f(0.0);
  for (int i = 1; i < kDiscordGridPoints; ++i) {
    const double value = f(i * step);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }

  const double lo = best > 0 ? (best - 1) * step : 0.0;
  const double hi = best < kDiscordGridPoints - 1 ? (best + 1) * step : kHalfPi;
  auto [theta, refined] = golden_section_min(f, lo, hi, kDiscordThetaTolerance);
  if (refined > best_value) {
    theta = best * step;
    refined = best_value;
  }

  double qd = entropy_single(rho) - entropy_pair(rho) + refined;
  if (qd < 0.0 && qd > -1e-10) qd = 0.0;
  return DiscordResult{.value = qd, .theta_star = theta};
}

}  // namespace qcpd
