// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion, with
// supporting detail indented below it, and exits nonzero on any failure.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "qcpd/cli.hpp"
#include "qcpd/sampling.hpp"

namespace {

using namespace qcpd;
using cli::format_number;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << "    " << (ok ? "ok   " : "FAIL ") << what << '\n';
  }
};

void from_checks(Outcome& o, const std::vector<cli::CheckResult>& checks) {
  for (const cli::CheckResult& c : checks) {
    o.require(c.pass, c.name + ": expected " + c.expected + ", got " + c.got + ", tolerance " +
                          c.tolerance);
  }
}

std::vector<double> ising_temperatures() {
  std::vector<double> t;
  for (int i = 0; i <= 10; ++i) t.push_back(0.01 * i);
  return t;
}

// Ising chain at L = 12, shared by criteria 7 and 8.
const std::vector<SweepResult>& ising_sweep() {
  static const std::vector<SweepResult> results = [] {
    SweepSpec spec;
    spec.model.family = Family::XY;
    spec.model.gamma = 1.0;
    spec.model.length = 12;
    spec.axis = ControlAxis::Lambda;
    spec.start = 0.4;
    spec.stop = 1.6;
    spec.step = 0.01;
    spec.temperatures = ising_temperatures();
    return sweep(spec);
  }();
  return results;
}

constexpr SearchWindow kIsingWindow{0.5, 1.5};

struct Target {
  Detector detector;
  int order;
  Extremum extremum;
};

// Signed extrema: QD curves upward at the critical point, the internal
// trace distance downward.
constexpr std::array<Target, 4> kIsingTargets = {{
    {Detector::QD, 2, Extremum::Max},
    {Detector::FmaxExt, 1, Extremum::Max},
    {Detector::DminInt, 2, Extremum::Min},
    {Detector::SqcZ, 1, Extremum::Max},
}};

Outcome criterion_1() {
  Outcome o;
  from_checks(o, cli::run_checks("table1"));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  from_checks(o, cli::run_checks("bell"));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  from_checks(o, cli::run_checks("oracles", 10000, 20240611));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  from_checks(o, cli::run_checks("symmetry"));
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const XState phi = XState::bell_phi_plus();
  const XState mixed = XState::maximally_mixed();
  double worst_phi = 0.0, worst_mixed = 0.0;
  for (int i = 0; i <= 32; ++i) {
    for (int j = 0; j < 64; ++j) {
      const InputQubit in = InputQubit::pure(std::numbers::pi * i / 32, 2 * std::numbers::pi * j / 64);
      worst_phi = std::max(worst_phi,
                           std::abs(mean_fidelity(in, phi, correction_set(BellState::PhiPlus)) - 1.0));
      for (BellState k : kBellStates) {
        worst_mixed = std::max(worst_mixed, std::abs(mean_fidelity(in, mixed, correction_set(k)) - 0.5));
      }
    }
  }
  o.require(worst_phi < 1e-12, "Phi+ channel, 33x64 pure inputs: max |F - 1| = " + format_number(worst_phi));
  o.require(worst_mixed < 1e-12,
            "maximally mixed channel, all sets: max |F - 1/2| = " + format_number(worst_mixed));

  SweepSpec spec;
  spec.model.length = 8;
  spec.start = -2.0;
  spec.stop = 2.0;
  spec.step = 0.01;
  spec.temperatures = {0.1, 0.5, 1.0, 5.0};
  std::size_t points = 0;
  double worst = 0.0, worst_z = 0.0;
  for (const SweepResult& r : sweep(spec)) {
    for (const SweepRecord& rec : r.records) {
      if (!rec.ok) {
        o.require(false, "sweep point failed: " + rec.error);
        continue;
      }
      worst_z = std::max(worst_z, std::abs(rec.corr.z));
      worst = std::max(worst, std::abs(rec.detectors.dmin.value));
      ++points;
    }
  }
  o.require(worst_z < 1e-12, "xxz h=0 L=8: max |z| = " + format_number(worst_z));
  o.require(worst < 1e-12, "xxz h=0 L=8, " + std::to_string(points) +
                               " points: max D_int = " + format_number(worst));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int ok_f = 0, ok_d = 0;
  bool deterministic = true;
  for (int n = 0; n < 20; ++n) {
    const XState rho = random_xstate(rng);
    const InputQubit in = InputQubit::pure(std::acos(1.0 - 2.0 * u(rng)), 2 * std::numbers::pi * u(rng));
    const CorrectionSet set = correction_set(kBellStates[n % 4]);
    const std::uint64_t seed = 1000 + n;
    const SimulationResult r = simulate_protocol(rho, in, set, 100000, seed);
    const SimulationResult again = simulate_protocol(rho, in, set, 100000, seed);
    deterministic = deterministic && r.mean_fidelity == again.mean_fidelity &&
                    r.mean_trace_distance == again.mean_trace_distance &&
                    r.outcome_counts == again.outcome_counts;
    const double f = mean_fidelity(in, rho, set);
    const double d = mean_trace_distance(in, rho, set);
    const double zf = std::abs(r.mean_fidelity - f) / std::max(r.fidelity_stderr, 1e-300);
    const double zd = std::abs(r.mean_trace_distance - d) / std::max(r.trace_distance_stderr, 1e-300);
    ok_f += std::abs(r.mean_fidelity - f) <= 3 * r.fidelity_stderr + 1e-12;
    ok_d += std::abs(r.mean_trace_distance - d) <= 3 * r.trace_distance_stderr + 1e-12;
    o.detail << "    case " << n << ": fidelity z = " << format_number(zf)
             << ", trace distance z = " << format_number(zd) << '\n';
  }
  o.require(ok_f == 20, std::to_string(ok_f) + "/20 fidelities within 3 standard errors");
  o.require(ok_d == 20, std::to_string(ok_d) + "/20 trace distances within 3 standard errors");
  o.require(deterministic, "identical results under a repeated seed");
  return o;
}

Outcome criterion_7() {
  Outcome o;
  for (const SweepResult& r : ising_sweep()) {
    const auto fwd = estimate_qcp(r, Detector::DminInt, 2, DiffMethod::Forward, kIsingWindow, Extremum::Min);
    const auto cen = estimate_qcp(r, Detector::DminInt, 2, DiffMethod::Central, kIsingWindow, Extremum::Min);
    const double gap = cen.estimate - fwd.estimate;
    o.require(std::abs(gap - 0.01) < 1e-9, "kT " + format_number(r.kT) + ": forward " +
                                               format_number(fwd.estimate) + ", central " +
                                               format_number(cen.estimate));
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  // Ising, L = 12: T -> 0 extrapolation of the central-difference estimates.
  for (const Target& t : kIsingTargets) {
    std::vector<QcpEstimate> est;
    for (const SweepResult& r : ising_sweep()) {
      est.push_back(estimate_qcp(r, t.detector, t.order, DiffMethod::Central, kIsingWindow, t.extremum));
    }
    const Extrapolation x = extrapolate_to_zero(est);
    std::string series;
    for (const QcpEstimate& e : est) series += ' ' + format_number(e.estimate);
    o.require(std::abs(x.intercept - 1.0) <= 0.15,
              "ising L=12 " + std::string(detector_name(t.detector)) + " order " +
                  std::to_string(t.order) + ": intercept " + format_number(x.intercept) + " +- " +
                  format_number(x.intercept_stderr) + " (estimates" + series + ")");
  }
  {
    std::vector<QcpEstimate> est;
    for (const SweepResult& r : ising_sweep()) {
      est.push_back(estimate_qcp(r, Detector::QD, 2, DiffMethod::Central, kIsingWindow, Extremum::MaxAbs));
    }
    o.detail << "    info ising L=12 qd order 2 by largest magnitude: intercept "
             << format_number(extrapolate_to_zero(est).intercept) << '\n';
  }

  // Ising at L = infinity, kT = 0.05.
  {
    SweepSpec spec;
    spec.model.family = Family::XY;
    spec.model.gamma = 1.0;
    spec.axis = ControlAxis::Lambda;
    spec.start = 0.4;
    spec.stop = 1.6;
    spec.step = 0.01;
    spec.temperatures = {0.05};
    spec.source = CorrelatorSource::ThermodynamicLimit;
    const SweepResult r = sweep(spec).front();
    for (const Target& t : kIsingTargets) {
      const auto e = estimate_qcp(r, t.detector, t.order, DiffMethod::Central, kIsingWindow, t.extremum);
      o.require(std::abs(e.estimate - 1.0) <= 0.02 + 1e-9,
                "ising L=inf kT=0.05 " + std::string(detector_name(t.detector)) + ": " +
                    format_number(e.estimate));
    }
  }

  // XXZ in a field h = 12, L = 12: estimates approach delta1 = 2 as kT falls.
  {
    SweepSpec spec;
    spec.model.family = Family::XXZField;
    spec.model.field = 12.0;
    spec.model.length = 12;
    spec.axis = ControlAxis::Delta;
    spec.start = 1.4;
    spec.stop = 2.6;
    spec.step = 0.01;
    spec.temperatures = {0.5, 0.4, 0.3, 0.2, 0.1};
    const auto results = sweep(spec);
    const double delta1 = xxz_delta1(12.0);
    for (Detector d : {Detector::QD, Detector::FmaxExt, Detector::DminInt, Detector::SqcX}) {
      std::string series;
      bool monotone = true;
      double previous = std::numeric_limits<double>::infinity();
      for (const SweepResult& r : results) {
        const auto e = estimate_qcp(r, d, 1, DiffMethod::Forward, {1.5, 2.5}, Extremum::MaxAbs);
        const double dist = std::abs(e.estimate - delta1);
        monotone = monotone && dist <= previous + e.uncertainty + 1e-9;
        previous = dist;
        series += ' ' + format_number(e.estimate);
      }
      o.require(monotone, "xxz h=12 L=12 " + std::string(detector_name(d)) +
                              " estimates at kT 0.5..0.1:" + series);
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 critical anisotropies", criterion_1},
      {"2 Bell-state coherence spectrum", criterion_2},
      {"3 closed forms vs oracles", criterion_3},
      {"4 symmetry identities", criterion_4},
      {"5 teleportation sanity", criterion_5},
      {"6 Monte Carlo convergence", criterion_6},
      {"7 forward vs central offset", criterion_7},
      {"8 critical-point estimation", criterion_8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& err) {
      o.require(false, std::string("exception: ") + err.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << format_number(std::round(secs * 100) / 100)
              << " s)\n"
              << o.detail.str() << std::flush;
  }
  std::cout << (8 - failed) << "/8 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
