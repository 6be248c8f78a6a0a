#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcpd/xstate.hpp"

namespace qcpd {

enum class Family { XXZ, XXZField, XY };

std::string_view family_name(Family family) noexcept;

/// Default cap on the chain length handled by exact diagonalization.
inline constexpr int kDefaultMaxLength = 12;
/// Basis states are 32-bit words; the sector solver refuses anything longer.
inline constexpr int kHardMaxLength = 24;

/// A periodic spin-1/2 chain and its temperature (k = 1).
///
///   XXZ:       H = sum_j (sx sx + sy sy + delta sz sz)
///   XXZField:  H = sum_j (sx sx + sy sy + delta sz sz - (field/2) sz_j)
///   XY:        H = -(lambda/4) sum_j [(1+gamma) sx sx + (1-gamma) sy sy] - (1/2) sum_j sz_j
struct ModelSpec {
  Family family = Family::XXZ;
  double delta = 0.0;
  double field = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  int length = 8;
  double kT = 1.0;
  /// Largest length accepted by validate().
  int max_length = kDefaultMaxLength;

  /// Throws std::invalid_argument unless length is even and in
  /// [4, max_length], and kT >= 0 (kT = +inf is allowed).
  void validate() const;
};

/// Bond and field couplings of H = sum_j (jx sx sx + jy sy sy + jz sz sz) - hz sum_j sz.
struct Couplings {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double hz = 0.0;
};

Couplings couplings(const ModelSpec& spec) noexcept;

/// Dense 2^L x 2^L Hamiltonian. Site j is bit j of the basis index and
/// bit value 0 is spin up (sz = +1).
Eigen::MatrixXd build_hamiltonian(const ModelSpec& spec);

enum class Solver {
  /// Full dense diagonalization of the 2^L matrix.
  Dense,
  /// Block diagonalization in translation x (magnetization or parity) sectors.
  Sectors,
};

class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectrum of H together with the diagonal matrix elements, in every
/// eigenstate, of the nearest-neighbour observables sz, sx sx, sy sy, sz sz.
/// Immutable; one diagonalization serves every temperature.
class ThermalSolution {
 public:
  ThermalSolution(std::vector<double> energies, std::vector<std::array<double, 4>> observables);

  const std::vector<double>& energies() const noexcept { return energies_; }
  double ground_energy() const noexcept { return energies_.front(); }

  /// ln Z at temperature kT > 0.
  double log_partition_function(double kT) const;
  /// Z = sum_n exp(-E_n/kT); may overflow to +inf at low kT.
  double partition_function(double kT) const;

  /// Thermal averages. kT = 0 averages the ground space with equal weights;
  /// kT = +inf weights every state equally.
  Correlators correlators(double kT) const;

 private:
  std::vector<double> energies_;                       // ascending
  std::vector<std::array<double, 4>> observables_;     // z, xx, yy, zz per state
};

/// Diagonalizes H(spec). Dense evaluates the bond (pair, pair + 1); Sectors
/// evaluates the translation average, which equals any single bond.
ThermalSolution diagonalize(const ModelSpec& spec, Solver solver = Solver::Sectors,
                            int pair = 0);

/// Energy window (relative to max(1, |E0|)) defining the ground space at kT = 0.
inline constexpr double kGroundWindow = 1e-10;

/// z, xx, yy, zz for the nearest-neighbour pair at temperature spec.kT.
Correlators thermal_correlators(const ModelSpec& spec, Solver solver = Solver::Sectors);

/// Thermodynamic-limit correlators of the XY family from the free-fermion
/// solution, integrated to kXyAbsTolerance. kT = 0 gives ground-state values.
Correlators xy_thermo_correlators(double lambda, double gamma, double kT);

inline constexpr double kXyAbsTolerance = 1e-10;

/// Ferromagnetic critical anisotropy of the XXZ chain in a field,
/// h = 4J(1 + delta1).
double xxz_delta1(double field, double coupling = 1.0) noexcept;

/// Antiferromagnetic critical anisotropy: solves
///   h = 4 sinh(eta) sum_j (-1)^j / cosh(j eta),   delta2 = cosh(eta).
/// field = 0 returns the zero-field limit 1.
double xxz_delta2(double field);

/// Right-hand side of the delta2 equation as a function of eta > 0.
double xxz_delta2_field(double eta);

}  // namespace qcpd
