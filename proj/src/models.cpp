#include "qcpd/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ed_sectors.hpp"

namespace qcpd {

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::XXZ:
      return "xxz";
    case Family::XXZField:
      return "xxz_field";
    case Family::XY:
      return "xy";
  }
  return "?";
}

void ModelSpec::validate() const {
  std::ostringstream msg;
  const int cap = std::min(max_length, kHardMaxLength);
  if (length < 4 || length % 2 != 0 || length > cap) {
    msg << "chain length must be even and in [4, " << cap << "], got " << length;
    throw std::invalid_argument(msg.str());
  }
  if (std::isnan(kT) || kT < 0.0) {
    msg << "kT must be nonnegative, got " << kT;
    throw std::invalid_argument(msg.str());
  }
  for (double v : {delta, field, lambda, gamma}) {
    if (!std::isfinite(v)) throw std::invalid_argument("model parameters must be finite");
  }
}

Couplings couplings(const ModelSpec& spec) noexcept {
  switch (spec.family) {
    case Family::XXZ:
      return {1.0, 1.0, spec.delta, 0.0};
    case Family::XXZField:
      return {1.0, 1.0, spec.delta, spec.field / 2.0};
    case Family::XY:
      return {-spec.lambda * (1.0 + spec.gamma) / 4.0, -spec.lambda * (1.0 - spec.gamma) / 4.0,
              0.0, 0.5};
  }
  return {};
}

Eigen::MatrixXd build_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.length;
  const Couplings j = couplings(spec);
  const std::uint32_t dim = 1u << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (int site = 0; site < n; ++site) {
      const int next = (site + 1) % n;
      const bool down_i = (s >> site) & 1u;
      const bool down_j = (s >> next) & 1u;
      const double sz_i = down_i ? -1.0 : 1.0;
      const double sz_j = down_j ? -1.0 : 1.0;
      h(s, s) += j.jz * sz_i * sz_j - j.hz * sz_i;
      const std::uint32_t t = s ^ ((1u << site) | (1u << next));
      h(t, s) += j.jx + j.jy * (down_i != down_j ? 1.0 : -1.0);
    }
  }
  return h;
}

ThermalSolution::ThermalSolution(std::vector<double> energies,
                                 std::vector<std::array<double, 4>> observables) {
  if (energies.empty() || energies.size() != observables.size()) {
    throw ComputeError("thermal solution needs one observable record per energy");
  }
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return energies[x] < energies[y]; });
  energies_.reserve(order.size());
  observables_.reserve(order.size());
  for (std::size_t i : order) {
    energies_.push_back(energies[i]);
    observables_.push_back(observables[i]);
  }
}

double ThermalSolution::log_partition_function(double kT) const {
  if (!(kT > 0.0)) throw std::invalid_argument("partition function needs kT > 0");
  const double e0 = ground_energy();
  double sum = 0.0;
  for (double e : energies_) sum += std::exp(-(e - e0) / kT);
  return std::log(sum) - e0 / kT;
}

double ThermalSolution::partition_function(double kT) const {
  return std::exp(log_partition_function(kT));
}

Correlators ThermalSolution::correlators(double kT) const {
  if (std::isnan(kT) || kT < 0.0) throw std::invalid_argument("kT must be nonnegative");
  const double e0 = ground_energy();
  const double window = kGroundWindow * std::max(1.0, std::abs(e0));
  std::array<double, 4> acc{};
  double norm = 0.0;
  for (std::size_t n = 0; n < energies_.size(); ++n) {
    double w;
    if (kT == 0.0) {
      if (energies_[n] - e0 > window) break;
      w = 1.0;
    } else if (std::isinf(kT)) {
      w = 1.0;
    } else {
      w = std::exp(-(energies_[n] - e0) / kT);
    }
    norm += w;
    for (int k = 0; k < 4; ++k) acc[k] += w * observables_[n][k];
  }
  return Correlators{acc[0] / norm, acc[1] / norm, acc[2] / norm, acc[3] / norm};
}

namespace {

ThermalSolution diagonalize_dense(const ModelSpec& spec, int pair) {
  const int n = spec.length;
  const std::uint32_t dim = 1u << n;
  const int i = ((pair % n) + n) % n;
  const int j = (i + 1) % n;
  const std::uint32_t flip = (1u << i) | (1u << j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_hamiltonian(spec));
  if (solver.info() != Eigen::Success) throw ComputeError("dense diagonalization failed");
  const Eigen::MatrixXd& v = solver.eigenvectors();

  std::vector<double> energies(dim);
  std::vector<std::array<double, 4>> obs(dim);
  for (std::uint32_t col = 0; col < dim; ++col) {
    energies[col] = solver.eigenvalues()(col);
    std::array<double, 4> o{};
    for (std::uint32_t s = 0; s < dim; ++s) {
      const double amp = v(s, col);
      const bool down_i = (s >> i) & 1u;
      const bool down_j = (s >> j) & 1u;
      const double sz_i = down_i ? -1.0 : 1.0;
      const double sz_j = down_j ? -1.0 : 1.0;
      const double cross = amp * v(s ^ flip, col);
      o[0] += amp * amp * sz_i;
      o[1] += cross;
      o[2] += cross * (down_i != down_j ? 1.0 : -1.0);
      o[3] += amp * amp * sz_i * sz_j;
    }
    obs[col] = o;
  }
  return ThermalSolution(std::move(energies), std::move(obs));
}

}  // namespace

ThermalSolution diagonalize(const ModelSpec& spec, Solver solver, int pair) {
  spec.validate();
  return solver == Solver::Dense ? diagonalize_dense(spec, pair) : detail::diagonalize_sectors(spec);
}

Correlators thermal_correlators(const ModelSpec& spec, Solver solver) {
  return diagonalize(spec, solver).correlators(spec.kT);
}

}  // namespace qcpd
