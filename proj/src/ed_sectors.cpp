#include "ed_sectors.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

namespace qcpd::detail {

namespace {

using Complex = std::complex<double>;

// Translation by one site: bit j moves to bit j + 1 (mod L).
std::uint32_t translate(std::uint32_t s, int n, std::uint32_t mask) {
  return ((s << 1) | (s >> (n - 1))) & mask;
}

struct Orbit {
  std::uint32_t rep = 0;  // smallest member of the translation orbit
  int shift = 0;          // s = T^shift rep
};

struct Representatives {
  std::vector<Orbit> orbit_of;        // indexed by basis state
  std::vector<int> period;            // indexed by basis state, valid for reps
  std::vector<std::uint32_t> reps;
};

Representatives find_representatives(int n) {
  const std::uint32_t dim = 1u << n;
  const std::uint32_t mask = dim - 1;
  Representatives r;
  r.orbit_of.resize(dim);
  r.period.assign(dim, 0);
  for (std::uint32_t s = 0; s < dim; ++s) {
    std::uint32_t t = s;
    std::uint32_t best = s;
    int best_l = 0;
    for (int l = 1; l < n; ++l) {
      t = translate(t, n, mask);
      if (t < best) {
        best = t;
        best_l = l;
      }
    }
    // T^best_l s = rep, hence s = T^(n - best_l) rep.
    r.orbit_of[s] = Orbit{best, (n - best_l) % n};
    if (best == s) {
      int p = 1;
      for (t = translate(s, n, mask); t != s; t = translate(t, n, mask)) ++p;
      r.period[s] = p;
      r.reps.push_back(s);
    }
  }
  return r;
}

struct Block {
  Eigen::MatrixXcd h;
  Eigen::MatrixXcd xx;
  Eigen::MatrixXcd yy;
  Eigen::VectorXd z;
  Eigen::VectorXd zz;
};

}  // namespace

ThermalSolution diagonalize_sectors(const ModelSpec& spec) {
  const int n = spec.length;
  const Couplings j = couplings(spec);
  const bool conserves_sz = j.jx == j.jy;
  const Representatives reps = find_representatives(n);
  const auto sector_of = [&](std::uint32_t s) {
    const int ups = std::popcount(s);
    return conserves_sz ? ups : (ups & 1);
  };
  const int sector_count = conserves_sz ? n + 1 : 2;
  const double inv_n = 1.0 / n;

  std::vector<int> index(std::size_t{1} << n, -1);
  std::vector<double> energies;
  std::vector<std::array<double, 4>> observables;
  energies.reserve(std::size_t{1} << n);
  observables.reserve(std::size_t{1} << n);

  for (int sector = 0; sector < sector_count; ++sector) {
    // H is real in the computational basis, so momenta m and n - m give
    // complex-conjugate blocks with identical spectra and diagonal elements.
    for (int m = 0; m <= n / 2; ++m) {
      const int copies = (m == 0 || 2 * m == n) ? 1 : 2;
      const double k = 2.0 * std::numbers::pi * m / n;

      std::vector<std::uint32_t> basis;
      for (std::uint32_t r : reps.reps) {
        if (sector_of(r) == sector && (m * reps.period[r]) % n == 0) {
          index[r] = static_cast<int>(basis.size());
          basis.push_back(r);
        }
      }
      const int dim = static_cast<int>(basis.size());
      if (dim == 0) continue;

      Block blk{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim),
                Eigen::MatrixXcd::Zero(dim, dim), Eigen::VectorXd::Zero(dim),
                Eigen::VectorXd::Zero(dim)};

      for (int col = 0; col < dim; ++col) {
        const std::uint32_t r = basis[col];
        double diag = 0.0;
        for (int site = 0; site < n; ++site) {
          const int next = (site + 1) % n;
          const bool down_i = (r >> site) & 1u;
          const bool down_j = (r >> next) & 1u;
          const double sz_i = down_i ? -1.0 : 1.0;
          const double sz_j = down_j ? -1.0 : 1.0;
          diag += j.jz * sz_i * sz_j - j.hz * sz_i;
          blk.z(col) += sz_i * inv_n;
          blk.zz(col) += sz_i * sz_j * inv_n;

          const std::uint32_t s = r ^ ((1u << site) | (1u << next));
          const Orbit target = reps.orbit_of[s];
          const int row = index[target.rep];
          if (row < 0 || basis[row] != target.rep) continue;
          const double yy_sign = down_i != down_j ? 1.0 : -1.0;
          const Complex phase =
              std::polar(std::sqrt(static_cast<double>(reps.period[r]) / reps.period[target.rep]),
                         k * target.shift);
          blk.h(row, col) += (j.jx + j.jy * yy_sign) * phase;
          blk.xx(row, col) += inv_n * phase;
          blk.yy(row, col) += inv_n * yy_sign * phase;
        }
        blk.h(col, col) += diag;
      }

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(blk.h);
      if (solver.info() != Eigen::Success) throw ComputeError("sector diagonalization failed");
      const Eigen::MatrixXcd& v = solver.eigenvectors();
      const Eigen::MatrixXcd xx_v = blk.xx * v;
      const Eigen::MatrixXcd yy_v = blk.yy * v;
      const Eigen::MatrixXd weight = v.cwiseAbs2();
      for (int e = 0; e < dim; ++e) {
        const std::array<double, 4> obs = {
            weight.col(e).dot(blk.z),
            v.col(e).dot(xx_v.col(e)).real(),
            v.col(e).dot(yy_v.col(e)).real(),
            weight.col(e).dot(blk.zz),
        };
        for (int c = 0; c < copies; ++c) {
          energies.push_back(solver.eigenvalues()(e));
          observables.push_back(obs);
        }
      }
      for (std::uint32_t r : basis) index[r] = -1;
    }
  }
  if (energies.size() != (std::size_t{1} << n)) {
    throw ComputeError("sector decomposition lost states");
  }
  return ThermalSolution(std::move(energies), std::move(observables));
}

}  // namespace qcpd::detail
