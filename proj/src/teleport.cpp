#include "qcpd/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

namespace qcpd {

namespace {

constexpr double kPureDeterminant = 1e-15;

using Complex = std::complex<double>;
using Matrix8cd = Eigen::Matrix<Complex, 8, 8>;

constexpr double kImpossibleOutcome = 1e-15;

Matrix8cd three_qubit_state(const Eigen::Matrix2cd& input, const XState& rho) {
  const Eigen::Matrix4cd pair = dense_matrix(rho).cast<Complex>();
  Matrix8cd out;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) out(i, j) = input(i / 4, j / 4) * pair(i % 4, j % 4);
  }
  return out;
}

// P (x) 1 with P acting on qubits 1 and 2.
Matrix8cd lift_projector(const Eigen::Matrix4cd& p) {
  Matrix8cd out = Matrix8cd::Zero();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i % 2 == j % 2) out(i, j) = p(i / 2, j / 2);
    }
  }
  return out;
}

Eigen::Matrix2cd trace_out_first_two(const Matrix8cd& m) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int q = 0; q < 4; ++q) {
    for (int b = 0; b < 2; ++b) {
      for (int bp = 0; bp < 2; ++bp) out(b, bp) += m(2 * q + b, 2 * q + bp);
    }
  }
  return out;
}

// Tr_12[P_j rho P_j], before correction and normalization.
Eigen::Matrix2cd conditional_bob(const Eigen::Matrix2cd& input, const XState& rho,
                                 BellState outcome) {
  const Matrix8cd p = lift_projector(bell_projector(outcome));
  return trace_out_first_two(p * three_qubit_state(input, rho) * p);
}

Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& m) {
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

Eigen::Matrix2cd pauli_density(int axis) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case 0:
      s(0, 1) = s(1, 0) = 0.5;
      break;
    case 1:
      s(0, 1) = Complex(0.0, -0.5);
      s(1, 0) = Complex(0.0, 0.5);
      break;
    default:
      s(0, 0) = 0.5;
      s(1, 1) = -0.5;
      break;
  }
  return s;
}

// Affine action r -> T r + t of the averaged protocol on Bloch vectors, for
// one correction set. Built by pushing I/2 and sigma/2 through the protocol.
struct BlochChannel {
  Eigen::Matrix3d linear;
  Eigen::Vector3d shift;

  double mean_fidelity(const Eigen::Vector3d& r) const {
    return 0.5 * (1.0 + r.dot(linear * r + shift));
  }
};

Eigen::Matrix2cd averaged_output(const Eigen::Matrix2cd& input, const XState& rho,
                                 const CorrectionSet& set) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (BellState j : kBellStates) {
    const Eigen::Matrix2cd u = correction_matrix(set[j]);
    out += u * conditional_bob(input, rho, j) * u.adjoint();
  }
  return out;
}

BlochChannel bloch_channel(const XState& rho, const CorrectionSet& set) {
  BlochChannel ch;
  ch.shift = bloch_vector(averaged_output(0.5 * Eigen::Matrix2cd::Identity(), rho, set));
  for (int i = 0; i < 3; ++i) {
    ch.linear.col(i) = bloch_vector(averaged_output(pauli_density(i), rho, set));
  }
  return ch;
}

Eigen::Vector3d bloch_direction(double theta, double chi) {
  return {std::sin(theta) * std::cos(chi), std::sin(theta) * std::sin(chi), std::cos(theta)};
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view bell_name(BellState state) noexcept {
  switch (state) {
    case BellState::PhiPlus:
      return "Phi+";
    case BellState::PhiMinus:
      return "Phi-";
    case BellState::PsiPlus:
      return "Psi+";
    case BellState::PsiMinus:
      return "Psi-";
  }
  return "?";
}

Eigen::Vector4cd bell_vector(BellState state) {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (state) {
    case BellState::PhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case BellState::PhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case BellState::PsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case BellState::PsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

Eigen::Matrix4cd bell_projector(BellState state) {
  const Eigen::Vector4cd v = bell_vector(state);
  return v * v.adjoint();
}

Eigen::Matrix2cd correction_matrix(Correction u) {
  Eigen::Matrix2cd m;
  switch (u) {
    case Correction::Identity:
      m << 1.0, 0.0, 0.0, 1.0;
      break;
    case Correction::SigmaZ:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
    case Correction::SigmaX:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Correction::SigmaZX:
      m << 0.0, 1.0, -1.0, 0.0;
      break;
  }
  return m;
}

CorrectionSet correction_set(BellState label) noexcept {
  using enum Correction;
  // Entries follow the outcome order Phi+, Phi-, Psi+, Psi-.
  switch (label) {
    case BellState::PhiPlus:
      return {label, {Identity, SigmaZ, SigmaX, SigmaZX}};
    case BellState::PhiMinus:
      return {label, {SigmaZ, Identity, SigmaZX, SigmaX}};
    case BellState::PsiPlus:
      return {label, {SigmaX, SigmaZX, Identity, SigmaZ}};
    case BellState::PsiMinus:
      return {label, {SigmaZX, SigmaX, SigmaZ, Identity}};
  }
  return {};
}

InputQubit InputQubit::pure(double theta, double chi) {
  Eigen::Vector2cd ket(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), chi));
  return InputQubit(ket * ket.adjoint());
}

InputQubit InputQubit::diagonal(const DiagonalQubit& q) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = q.p0;
  m(1, 1) = q.p1;
  return InputQubit(m);
}

double outcome_probability(const InputQubit& input, const XState& rho, BellState outcome) {
  const Matrix8cd p = lift_projector(bell_projector(outcome));
  return (p * three_qubit_state(input.density(), rho)).trace().real();
}

Eigen::Matrix2cd bob_output(const InputQubit& input, const XState& rho, BellState outcome,
                            const CorrectionSet& set) {
  const Eigen::Matrix2cd unnormalized = conditional_bob(input.density(), rho, outcome);
  const double q = unnormalized.trace().real();
  if (q < kImpossibleOutcome) {
    throw ImpossibleOutcome("Bell outcome " + std::string(bell_name(outcome)) +
                            " has zero probability");
  }
  const Eigen::Matrix2cd u = correction_matrix(set[outcome]);
  return u * unnormalized * u.adjoint() / q;
}

double qubit_fidelity(const Eigen::Matrix2cd& p, const Eigen::Matrix2cd& q) {
  const double overlap = (p * q).trace().real();
  // Determinants at rounding level belong to pure states; their square root
  // would otherwise inject an O(1e-8) error.
  const auto det_of = [](const Eigen::Matrix2cd& m) {
    const double v = m.determinant().real();
    return v < kPureDeterminant ? 0.0 : v;
  };
  const double det = det_of(p) * det_of(q);
  return std::clamp(overlap + 2.0 * std::sqrt(det), 0.0, 1.0);
}

double trace_distance(const Eigen::Matrix2cd& p, const Eigen::Matrix2cd& q) {
  return 0.5 * (bloch_vector(p) - bloch_vector(q)).norm();
}

double mean_fidelity(const InputQubit& input, const XState& rho, const CorrectionSet& set) {
  double total = 0.0;
  for (BellState j : kBellStates) {
    const double q = outcome_probability(input, rho, j);
    if (q < kImpossibleOutcome) continue;
    total += q * qubit_fidelity(input.density(), bob_output(input, rho, j, set));
  }
  return total;
}

double mean_trace_distance(const InputQubit& input, const XState& rho,
                           const CorrectionSet& set) {
  double total = 0.0;
  for (BellState j : kBellStates) {
    const double q = outcome_probability(input, rho, j);
    if (q < kImpossibleOutcome) continue;
    total += q * trace_distance(input.density(), bob_output(input, rho, j, set));
  }
  return total;
}

BranchValue max_mean_fidelity(const XState& rho) noexcept {
  const std::array<double, 3> terms = {2.0 * rho.b(), 1.0 - 2.0 * rho.b(),
                                       0.5 + std::abs(rho.c()) + std::abs(rho.e())};
  const auto it = std::max_element(terms.begin(), terms.end());
  return {*it, static_cast<int>(it - terms.begin())};
}

double max_mean_fidelity_from_correlators(const Correlators& corr) noexcept {
  return 0.5 * (1.0 + std::max({std::abs(corr.xx), std::abs(corr.yy), std::abs(corr.zz)}));
}

double max_mean_fidelity_bruteforce(const XState& rho, const BlochSearch& search) {
  const int nt = std::max(search.theta_points, 2);
  const int nc = std::max(search.chi_points, 1);
  const double dtheta = std::numbers::pi / (nt - 1);
  const double dchi = 2.0 * std::numbers::pi / nc;

  double best_overall = 0.0;
  for (BellState k : kBellStates) {
    const BlochChannel ch = bloch_channel(rho, correction_set(k));
    const auto f = [&ch](double theta, double chi) {
      return ch.mean_fidelity(bloch_direction(theta, chi));
    };

    double best = -1.0;
    double best_theta = 0.0;
    double best_chi = 0.0;
    for (int i = 0; i < nt; ++i) {
      for (int j = 0; j < nc; ++j) {
        const double value = f(i * dtheta, j * dchi);
        if (value > best) {
          best = value;
          best_theta = i * dtheta;
          best_chi = j * dchi;
        }
      }
    }

    if (search.refine) {
      // Compass search seeded at the grid argmax.
      double step = std::max(dtheta, dchi);
      while (step > 1e-10) {
        bool moved = false;
        const std::array<std::pair<double, double>, 4> moves = {
            std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        for (const auto& [dt, dc] : moves) {
          const double theta = std::clamp(best_theta + dt, 0.0, std::numbers::pi);
          const double chi = best_chi + dc;
          const double value = f(theta, chi);
          if (value > best) {
            best = value;
            best_theta = theta;
            best_chi = chi;
            moved = true;
          }
        }
        if (!moved) step *= 0.5;
      }
    }
    best_overall = std::max(best_overall, best);
  }
  return best_overall;
}

BranchValue min_mean_trace_distance(const XState& rho) noexcept {
  const double b = rho.b();
  const double d = rho.d();
  const double s = b + d;
  const double base = 2.0 * b + d - s * s;
  const double spread = std::abs(s * s - d);
  const double d_minus = base - spread;
  const double d_plus = base + spread;
  const double prefactor = std::abs(1.0 - 2.0 * s);
  const bool plus_branch = d_plus < 1.0 - d_minus;
  return {prefactor * (plus_branch ? d_plus : 1.0 - d_minus), plus_branch ? 1 : 0};
}

double min_mean_trace_distance_from_correlators(const Correlators& corr) noexcept {
  const double z = corr.z;
  return 0.25 * ((2.0 - std::abs(z * z + corr.zz)) * std::abs(z) +
                 std::abs(z * z * z - z * corr.zz));
}

double min_mean_trace_distance_bruteforce(const XState& rho) {
  const InputQubit input = InputQubit::internal(rho);
  double best = 1.0;
  for (BellState k : kBellStates) {
    best = std::min(best, mean_trace_distance(input, rho, correction_set(k)));
  }
  return best;
}

SimulationResult simulate_protocol(const XState& rho, const InputQubit& input,
                                   const CorrectionSet& set, std::uint64_t runs,
                                   std::uint64_t seed) {
  // Each outcome determines Bob's state, so the per-outcome scores are
  // computed once and the runs only sample outcomes.
  std::array<double, 4> prob{};
  std::array<double, 4> fidelity{};
  std::array<double, 4> distance{};
  for (BellState j : kBellStates) {
    const auto idx = static_cast<std::size_t>(j);
    prob[idx] = outcome_probability(input, rho, j);
    if (prob[idx] < kImpossibleOutcome) {
      prob[idx] = 0.0;
      continue;
    }
    const Eigen::Matrix2cd out = bob_output(input, rho, j, set);
    fidelity[idx] = qubit_fidelity(input.density(), out);
    distance[idx] = trace_distance(input.density(), out);
  }
  std::array<double, 4> cumulative{};
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    acc += prob[i];
    cumulative[i] = acc;
  }

  SimulationResult result;
  result.runs = runs;
  if (runs == 0) return result;

  std::mt19937_64 rng(seed);
  // Welford accumulators.
  double f_mean = 0.0, f_m2 = 0.0, d_mean = 0.0, d_m2 = 0.0;
  for (std::uint64_t r = 0; r < runs; ++r) {
    const double u = uniform01(rng) * acc;
    std::size_t j = 0;
    while (j < 3 && (u >= cumulative[j] || prob[j] == 0.0)) ++j;
    ++result.outcome_counts[j];
    const double n = static_cast<double>(r + 1);
    const double df = fidelity[j] - f_mean;
    f_mean += df / n;
    f_m2 += df * (fidelity[j] - f_mean);
    const double dd = distance[j] - d_mean;
    d_mean += dd / n;
    d_m2 += dd * (distance[j] - d_mean);
  }
  const double n = static_cast<double>(runs);
  const auto stderr_of = [n](double m2) {
    return n < 2.0 ? 0.0 : std::sqrt(m2 / (n - 1.0) / n);
  };
  result.mean_fidelity = f_mean;
  result.fidelity_stderr = stderr_of(f_m2);
  result.mean_trace_distance = d_mean;
  result.trace_distance_stderr = stderr_of(d_m2);
  return result;
}

}  // namespace qcpd
