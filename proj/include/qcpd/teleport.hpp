#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

#include "qcpd/xstate.hpp"

namespace qcpd {

/// Bell states, listed in the order used to index correction sets.
enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus};

std::string_view bell_name(BellState state) noexcept;

/// |Phi+-> = (|00> +- |11>)/sqrt2, |Psi+-> = (|01> +- |10>)/sqrt2.
Eigen::Vector4cd bell_vector(BellState state);
Eigen::Matrix4cd bell_projector(BellState state);

enum class Correction { Identity, SigmaZ, SigmaX, SigmaZX };

Eigen::Matrix2cd correction_matrix(Correction u);

/// Bob's unitary for each Bell-measurement outcome. The set labelled k is the
/// standard correction table when the shared pair is the Bell state k.
struct CorrectionSet {
  BellState label = BellState::PhiPlus;
  std::array<Correction, 4> by_outcome{};

  Correction operator[](BellState outcome) const noexcept {
    return by_outcome[static_cast<std::size_t>(outcome)];
  }
};

CorrectionSet correction_set(BellState label) noexcept;

/// Single-qubit density matrix fed into the protocol.
class InputQubit {
 public:
  /// cos(theta/2)|0> + e^{i chi} sin(theta/2)|1>.
  static InputQubit pure(double theta, double chi);
  static InputQubit diagonal(const DiagonalQubit& q);
  /// Internal protocol: one spin of the chain, i.e. the reduced pair state.
  static InputQubit internal(const XState& rho) { return diagonal(reduced_single(rho)); }

  const Eigen::Matrix2cd& density() const noexcept { return density_; }

 private:
  explicit InputQubit(Eigen::Matrix2cd density) : density_(std::move(density)) {}
  Eigen::Matrix2cd density_;
};

/// Raised by bob_output for a measurement outcome of zero probability.
class ImpossibleOutcome : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Q_j = Tr[P_j (rho_1 (x) rho_23)].
double outcome_probability(const InputQubit& input, const XState& rho, BellState outcome);

/// U_j Tr_12[P_j rho P_j] U_j^dagger / Q_j.
Eigen::Matrix2cd bob_output(const InputQubit& input, const XState& rho, BellState outcome,
                            const CorrectionSet& set);

/// Uhlmann fidelity of two single-qubit states; <psi|q|psi> when p is pure.
double qubit_fidelity(const Eigen::Matrix2cd& p, const Eigen::Matrix2cd& q);

/// Half the Euclidean distance between the Bloch vectors of p and q.
double trace_distance(const Eigen::Matrix2cd& p, const Eigen::Matrix2cd& q);

/// sum_j Q_j <psi| rho_Bj |psi>. The input must be pure.
double mean_fidelity(const InputQubit& input, const XState& rho, const CorrectionSet& set);

/// sum_j Q_j D(rho_1, rho_Bj).
double mean_trace_distance(const InputQubit& input, const XState& rho, const CorrectionSet& set);

struct BranchValue {
  double value = 0.0;
  /// Index of the closed-form term attaining the optimum.
  int branch = 0;
};

/// max[2b, 1 - 2b, 1/2 + |c| + |e|]; branch indexes that list.
BranchValue max_mean_fidelity(const XState& rho) noexcept;

/// Same optimum from the correlators, max over (1 + |ss|)/2.
double max_mean_fidelity_from_correlators(const Correlators& corr) noexcept;

struct BlochSearch {
  int theta_points = 128;
  int chi_points = 256;
  bool refine = true;
};

/// Maximum of mean_fidelity over a theta x chi grid of pure inputs and the
/// four correction sets, optionally polished by a local pattern search.
double max_mean_fidelity_bruteforce(const XState& rho, const BlochSearch& search = {});

/// |1 - 2(b + d)| min[1 - D-, D+] with D+- = 2b + d - (b+d)^2 +- |(b+d)^2 - d|;
/// branch 0 is the 1 - D- term and 1 is D+.
BranchValue min_mean_trace_distance(const XState& rho) noexcept;

/// Same quantity from (z, zz).
double min_mean_trace_distance_from_correlators(const Correlators& corr) noexcept;

/// Minimum of mean_trace_distance over the four correction sets with the
/// internal input, computed by explicit protocol algebra.
double min_mean_trace_distance_bruteforce(const XState& rho);

struct SimulationResult {
  std::uint64_t runs = 0;
  double mean_fidelity = 0.0;
  double fidelity_stderr = 0.0;
  double mean_trace_distance = 0.0;
  double trace_distance_stderr = 0.0;
  std::array<std::uint64_t, 4> outcome_counts{};
};

/// Runs the protocol `runs` times: samples an outcome with probability Q_j,
/// applies the correction and scores Bob's qubit against the input.
/// Deterministic for a given seed.
SimulationResult simulate_protocol(const XState& rho, const InputQubit& input,
                                   const CorrectionSet& set, std::uint64_t runs,
                                   std::uint64_t seed);

}  // namespace qcpd
