#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "qcpd/cli.hpp"
#include "qcpd/sampling.hpp"

namespace qcpd::cli {

namespace {

std::string num(double v) { return format_number(v); }

CheckResult within(std::string group, std::string name, double expected, double got, double tol) {
  return {std::move(group), std::move(name), num(expected), num(got), num(tol),
          std::abs(got - expected) <= tol};
}

// A maximum error over many samples, reported against zero.
CheckResult max_error(std::string group, std::string name, double worst, double tol) {
  return within(std::move(group), std::move(name), 0.0, worst, tol);
}

CheckResult flag(std::string group, std::string name, bool expected, bool got) {
  return {std::move(group), std::move(name), expected ? "true" : "false", got ? "true" : "false",
          "exact", expected == got};
}

void table1_checks(std::vector<CheckResult>& out) {
  const std::string g = "table1";
  out.push_back(within(g, "delta2(h=12)", 4.875, xxz_delta2(12.0), 1e-3));
  out.push_back(within(g, "delta2(h=0)", 1.0, xxz_delta2(0.0), 1e-3));
  out.push_back(within(g, "delta2(h=1e-100)", 1.0, xxz_delta2(1e-100), 1e-3));
  out.push_back(within(g, "delta1(h=12,J=1)", 2.0, xxz_delta1(12.0, 1.0), 0.0));
  out.push_back(within(g, "delta1(h=0,J=1)", -1.0, xxz_delta1(0.0, 1.0), 0.0));
}

void bell_checks(std::vector<CheckResult>& out) {
  const std::string g = "bell";
  const XState phi = XState::bell_phi_plus();
  const std::array<double, 4> expected = {-1.0, -1.0, 0.0, 0.0};
  for (Axis k : {Axis::X, Axis::Y, Axis::Z}) {
    const std::string axis(axis_name(k));
    std::array<double, 4> closed = spectrum_eigenvalues(phi, k).alpha;
    std::sort(closed.begin(), closed.end());
    const std::array<double, 4> dense = spectrum_eigenvalues_oracle(phi, k);
    double worst_closed = 0.0, worst_dense = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      worst_closed = std::max(worst_closed, std::abs(closed[i] - expected[i]));
      worst_dense = std::max(worst_dense, std::abs(dense[i] - closed[i]));
    }
    out.push_back(max_error(g, "spectrum " + axis + " = {-1,-1,0,0}", worst_closed, 1e-12));
    out.push_back(max_error(g, "spectrum " + axis + " closed vs dense", worst_dense, 1e-12));
    out.push_back(flag(g, "lqc_" + axis + " divergent", true, log_spectrum(phi, k).divergent));
    out.push_back(within(g, "sqc_" + axis, 0.0, coherence_entropy(phi, k), 1e-12));
  }
}

void oracle_checks(std::vector<CheckResult>& out, std::size_t samples, std::uint64_t seed) {
  const std::string g = "oracles";
  std::mt19937_64 rng(seed);
  double spectrum = 0.0, grid = 0.0, refined = 0.0, distance = 0.0;
  double qd_lo = 0.0, qd_hi = 0.0;
  const BlochSearch coarse{128, 256, false};
  for (std::size_t n = 0; n < samples; ++n) {
    const XState rho = random_xstate(rng);
    for (Axis k : {Axis::X, Axis::Y, Axis::Z}) {
      std::array<double, 4> closed = spectrum_eigenvalues(rho, k).alpha;
      std::sort(closed.begin(), closed.end());
      const std::array<double, 4> dense = spectrum_eigenvalues_oracle(rho, k);
      for (std::size_t i = 0; i < 4; ++i) spectrum = std::max(spectrum, std::abs(closed[i] - dense[i]));
    }
    const double f = max_mean_fidelity(rho).value;
    grid = std::max(grid, std::abs(f - max_mean_fidelity_bruteforce(rho, coarse)));
    refined = std::max(refined, std::abs(f - max_mean_fidelity_bruteforce(rho)));
    distance = std::max(distance, std::abs(min_mean_trace_distance(rho).value -
                                           min_mean_trace_distance_bruteforce(rho)));
    const double qd = quantum_discord(rho).value;
    qd_lo = std::min(qd_lo, qd);
    qd_hi = std::max(qd_hi, qd - 1.0);
  }
  const std::string count = " (" + std::to_string(samples) + " states)";
  out.push_back(max_error(g, "coherence spectrum closed vs dense" + count, spectrum, 1e-10));
  out.push_back(max_error(g, "max fidelity closed vs Bloch grid" + count, grid, 1e-3));
  out.push_back(max_error(g, "max fidelity closed vs refined search" + count, refined, 1e-6));
  out.push_back(max_error(g, "min trace distance closed vs enumeration" + count, distance, 1e-9));
  out.push_back(max_error(g, "qd below 0" + count, -qd_lo, 0.0));
  out.push_back(max_error(g, "qd above 1" + count, qd_hi, 0.0));
  double product = 0.0;
  for (int i = 0; i <= 20; ++i) {
    product = std::max(product, quantum_discord(product_xstate(i / 20.0)).value);
  }
  out.push_back(max_error(g, "qd of product states", product, 1e-9));
}

void symmetry_checks(std::vector<CheckResult>& out) {
  const std::string g = "symmetry";
  const std::array<double, 3> temperatures = {0.5, 1.0, 5.0};
  for (int length : {4, 6, 8}) {
    const std::string tag = " L=" + std::to_string(length);
    double iso = 0.0, ferro = 0.0, planar = 0.0;
    bool iso_div = true, ferro_div = true, planar_div = true;
    for (double delta : {1.0, -1.0}) {
      ModelSpec m;
      m.delta = delta;
      m.length = length;
      const ThermalSolution sol = diagonalize(m);
      for (double kT : temperatures) {
        const Correlators c = sol.correlators(kT);
        const XState rho = build_xstate(c);
        bool all = true;
        for (Axis k : {Axis::X, Axis::Y, Axis::Z}) all = all && log_spectrum(rho, k).divergent;
        if (delta > 0) {
          iso = std::max(iso, std::abs(c.xx - c.zz));
          iso_div = iso_div && all;
        } else {
          ferro = std::max(ferro, std::abs(c.xx + c.zz));
          ferro_div = ferro_div && all;
        }
      }
    }
    for (double lambda : {0.5, 1.0, 2.0}) {
      ModelSpec m;
      m.family = Family::XY;
      m.lambda = lambda;
      m.gamma = 0.0;
      m.length = length;
      const ThermalSolution sol = diagonalize(m);
      for (double kT : temperatures) {
        const Correlators c = sol.correlators(kT);
        planar = std::max(planar, std::abs(c.xx - c.yy));
        planar_div = planar_div && log_spectrum(build_xstate(c), Axis::Z).divergent;
      }
    }
    out.push_back(max_error(g, "xxz delta=1 |xx-zz|" + tag, iso, 1e-10));
    out.push_back(flag(g, "xxz delta=1 lqc divergent on x,y,z" + tag, true, iso_div));
    out.push_back(max_error(g, "xxz delta=-1 |xx+zz|" + tag, ferro, 1e-10));
    out.push_back(flag(g, "xxz delta=-1 lqc divergent on x,y,z" + tag, true, ferro_div));
    out.push_back(max_error(g, "xy gamma=0 |xx-yy|" + tag, planar, 1e-10));
    out.push_back(flag(g, "xy gamma=0 lqc_z divergent" + tag, true, planar_div));
  }
}

}  // namespace

std::vector<CheckResult> run_checks(std::string_view subset, std::size_t samples,
                                    std::uint64_t seed) {
  const bool all = subset == "all";
  if (!all && subset != "table1" && subset != "bell" && subset != "oracles" &&
      subset != "symmetry") {
    throw ConfigError("unknown verify subset '" + std::string(subset) +
                      "' (table1|bell|oracles|symmetry|all)");
  }
  std::vector<CheckResult> out;
  if (all || subset == "table1") table1_checks(out);
  if (all || subset == "bell") bell_checks(out);
  if (all || subset == "oracles") oracle_checks(out, samples, seed);
  if (all || subset == "symmetry") symmetry_checks(out);
  return out;
}

int cmd_verify(std::string_view subset, const RunConfig& config, std::ostream& report) {
  std::vector<CheckResult> checks;
  try {
    checks = run_checks(subset, config.verify_samples, config.seed);
  } catch (const ConfigError& err) {
    report << "config error: " << err.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& err) {
    report << "computation error: " << err.what() << '\n';
    return kExitCompute;
  }
  std::size_t failed = 0;
  for (const CheckResult& c : checks) {
    if (!c.pass) ++failed;
    report << (c.pass ? "PASS " : "FAIL ") << c.group << ": " << c.name << "  expected "
           << c.expected << "  got " << c.got << "  tolerance " << c.tolerance << '\n';
  }
  report << checks.size() - failed << '/' << checks.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitVerify;
}

}  // namespace qcpd::cli
