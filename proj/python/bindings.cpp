#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcpd/scan.hpp"

namespace py = pybind11;
using namespace qcpd;

namespace {

Axis to_axis(const std::string& name) {
  if (name == "x") return Axis::X;
  if (name == "y") return Axis::Y;
  if (name == "z") return Axis::Z;
  throw std::invalid_argument("axis must be 'x', 'y' or 'z'");
}

template <typename T>
T parse_or_throw(std::optional<T> v, const std::string& what, const std::string& name) {
  if (!v) throw std::invalid_argument("unknown " + what + " '" + name + "'");
  return *v;
}

Family to_family(const std::string& name) {
  if (name == "xxz") return Family::XXZ;
  if (name == "xxz_field") return Family::XXZField;
  if (name == "xy") return Family::XY;
  throw std::invalid_argument("family must be 'xxz', 'xxz_field' or 'xy'");
}

BellState to_bell(const std::string& name) {
  for (BellState k : kBellStates) {
    if (name == bell_name(k)) return k;
  }
  throw std::invalid_argument("correction set must be one of Phi+, Phi-, Psi+, Psi-");
}

py::dict to_dict(const Correlators& c) {
  py::dict d;
  d["z"] = c.z;
  d["xx"] = c.xx;
  d["yy"] = c.yy;
  d["zz"] = c.zz;
  return d;
}

ModelSpec make_model(const std::string& family, double delta, double field, double lambda,
                     double gamma, int length, double kT) {
  ModelSpec m;
  m.family = to_family(family);
  m.delta = delta;
  m.field = field;
  m.lambda = lambda;
  m.gamma = gamma;
  m.length = length;
  m.kT = kT;
  return m;
}

double lqc_or_inf(const DetectorValue& v) {
  return v.divergent ? std::numeric_limits<double>::infinity() : v.value;
}

// One dict of equal-length lists per temperature, keyed like the sweep CSV.
py::dict sweep_columns(const SweepResult& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> cols(21);
  for (const SweepRecord& rec : r.records) {
    const DetectorSet& d = rec.detectors;
    std::array<double, 21> row = {rec.param, r.kT, rec.corr.z, rec.corr.xx, rec.corr.yy, rec.corr.zz,
                                  d.qd.value, d.qd.theta_star, d.sqc[0], d.sqc[1], d.sqc[2],
                                  lqc_or_inf(d.lqc[0]), lqc_or_inf(d.lqc[1]), lqc_or_inf(d.lqc[2]),
                                  double(d.lqc[0].divergent), double(d.lqc[1].divergent),
                                  double(d.lqc[2].divergent), d.fmax.value, double(d.fmax.branch),
                                  d.dmin.value, double(d.dmin.branch)};
    if (!rec.ok) {
      for (std::size_t i = 2; i < row.size(); ++i) row[i] = nan;
    }
    for (std::size_t i = 0; i < row.size(); ++i) cols[i].push_back(row[i]);
  }
  static const char* names[21] = {"param", "kT", "z", "xx", "yy", "zz", "qd", "theta_star",
                                  "sqc_x", "sqc_y", "sqc_z", "lqc_x", "lqc_y", "lqc_z",
                                  "lqc_x_divergent", "lqc_y_divergent", "lqc_z_divergent",
                                  "fmax_ext", "fmax_branch", "dmin_int", "dmin_branch"};
  py::dict out;
  for (std::size_t i = 0; i < cols.size(); ++i) out[names[i]] = cols[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_qcpd, m) {
  m.doc() = "Quantum critical point detectors for spin-1/2 chains";

  py::class_<XState>(m, "XState")
      .def(py::init(&XState::from_entries), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
           py::arg("e"))
      .def_property_readonly("a", &XState::a)
      .def_property_readonly("b", &XState::b)
      .def_property_readonly("c", &XState::c)
      .def_property_readonly("d", &XState::d)
      .def_property_readonly("e", &XState::e)
      .def("eigenvalues", &XState::eigenvalues)
      .def("correlators", [](const XState& s) { return to_dict(s.correlators()); })
      .def_static("bell_phi_plus", &XState::bell_phi_plus)
      .def_static("maximally_mixed", &XState::maximally_mixed)
      .def_static("singlet", &XState::singlet)
      .def("__repr__", [](const XState& s) {
        return "XState(a=" + std::to_string(s.a()) + ", b=" + std::to_string(s.b()) +
               ", c=" + std::to_string(s.c()) + ", d=" + std::to_string(s.d()) +
               ", e=" + std::to_string(s.e()) + ")";
      });

  m.def("build_xstate",
        [](double z, double xx, double yy, double zz) { return build_xstate({z, xx, yy, zz}); },
        py::arg("z"), py::arg("xx"), py::arg("yy"), py::arg("zz"));

  m.def("quantum_discord",
        [](const XState& rho) {
          const DiscordResult r = quantum_discord(rho);
          return py::make_tuple(r.value, r.theta_star);
        },
        py::arg("rho"), "(discord, optimal theta)");

  m.def("spectrum_eigenvalues",
        [](const XState& rho, const std::string& axis) { return spectrum_eigenvalues(rho, to_axis(axis)).alpha; },
        py::arg("rho"), py::arg("axis"));
  m.def("coherence_entropy",
        [](const XState& rho, const std::string& axis) { return coherence_entropy(rho, to_axis(axis)); },
        py::arg("rho"), py::arg("axis"));
  m.def("log_spectrum",
        [](const XState& rho, const std::string& axis) { return lqc_or_inf(log_spectrum(rho, to_axis(axis))); },
        py::arg("rho"), py::arg("axis"), "inf when the spectrum has a null eigenvalue");

  m.def("max_mean_fidelity",
        [](const XState& rho) {
          const BranchValue b = max_mean_fidelity(rho);
          return py::make_tuple(b.value, b.branch);
        },
        py::arg("rho"));
  m.def("min_mean_trace_distance",
        [](const XState& rho) {
          const BranchValue b = min_mean_trace_distance(rho);
          return py::make_tuple(b.value, b.branch);
        },
        py::arg("rho"));

  m.def("thermal_correlators",
        [](const std::string& family, double delta, double field, double lambda, double gamma, int L,
           double kT) { return to_dict(thermal_correlators(make_model(family, delta, field, lambda, gamma, L, kT))); },
        py::arg("family") = "xxz", py::arg("delta") = 0.0, py::arg("field") = 0.0,
        py::arg("lambda_") = 0.0, py::arg("gamma") = 0.0, py::arg("L") = 8, py::arg("kT") = 1.0);
  m.def("xy_thermo_correlators",
        [](double lambda, double gamma, double kT) { return to_dict(xy_thermo_correlators(lambda, gamma, kT)); },
        py::arg("lambda_"), py::arg("gamma"), py::arg("kT"));
  m.def("xxz_delta1", &xxz_delta1, py::arg("field"), py::arg("coupling") = 1.0);
  m.def("xxz_delta2", &xxz_delta2, py::arg("field"));

  m.def("sweep",
        [](const std::string& family, const std::string& axis, double start, double stop, double step,
           std::vector<double> temperatures, int L, double delta, double field, double lambda,
           double gamma, const std::string& source, int workers) {
          SweepSpec spec;
          spec.model = make_model(family, delta, field, lambda, gamma, L, 1.0);
          spec.axis = parse_or_throw(parse_control_axis(axis), "axis", axis);
          spec.start = start;
          spec.stop = stop;
          spec.step = step;
          spec.temperatures = std::move(temperatures);
          if (source == "thermo") {
            spec.source = CorrelatorSource::ThermodynamicLimit;
          } else if (source != "ed") {
            throw std::invalid_argument("source must be 'ed' or 'thermo'");
          }
          spec.workers = workers;
          std::vector<SweepResult> results;
          {
            py::gil_scoped_release release;
            results = sweep(spec);
          }
          py::list out;
          for (const SweepResult& r : results) out.append(sweep_columns(r));
          return out;
        },
        py::arg("family") = "xxz", py::arg("axis") = "delta", py::arg("start") = -2.0,
        py::arg("stop") = 2.0, py::arg("step") = 0.01, py::arg("temperatures") = std::vector<double>{1.0},
        py::arg("L") = 8, py::arg("delta") = 0.0, py::arg("field") = 0.0, py::arg("lambda_") = 0.0,
        py::arg("gamma") = 0.0, py::arg("source") = "ed", py::arg("workers") = 1,
        "One dict of column lists per temperature, keyed like the sweep CSV.");

  m.def("estimate_qcp",
        [](std::vector<double> grid, std::vector<std::optional<double>> values, double step, int order,
           const std::string& method, std::pair<double, double> window, const std::string& extremum) {
          for (auto& v : values) {
            if (v && !std::isfinite(*v)) v.reset();
          }
          const QcpEstimate e =
              estimate_qcp(grid, values, step, order, parse_or_throw(parse_method(method), "method", method),
                           {window.first, window.second},
                           parse_or_throw(parse_extremum(extremum), "extremum", extremum));
          return py::make_tuple(e.estimate, e.uncertainty);
        },
        py::arg("grid"), py::arg("values"), py::arg("step"), py::arg("order") = 1,
        py::arg("method") = "forward", py::arg("window"), py::arg("extremum") = "maxabs",
        "(estimate, uncertainty); None, nan and inf values are undefined points.");

  m.def("extrapolate_to_zero",
        [](const std::vector<double>& kT, const std::vector<double>& estimates) {
          if (kT.size() != estimates.size()) throw std::invalid_argument("kT and estimates differ in length");
          std::vector<QcpEstimate> est(kT.size());
          for (std::size_t i = 0; i < kT.size(); ++i) {
            est[i].kT = kT[i];
            est[i].estimate = estimates[i];
          }
          const Extrapolation x = extrapolate_to_zero(est);
          return py::make_tuple(x.intercept, x.intercept_stderr, x.slope);
        },
        py::arg("kT"), py::arg("estimates"), "(intercept, intercept stderr, slope)");

  m.def("simulate_protocol",
        [](const XState& rho, double theta, double chi, const std::string& set, std::uint64_t runs,
           std::uint64_t seed) {
          const InputQubit in = InputQubit::pure(theta, chi);
          const CorrectionSet s = correction_set(to_bell(set));
          SimulationResult r;
          {
            py::gil_scoped_release release;
            r = simulate_protocol(rho, in, s, runs, seed);
          }
          py::dict d;
          d["runs"] = r.runs;
          d["mean_fidelity"] = r.mean_fidelity;
          d["fidelity_stderr"] = r.fidelity_stderr;
          d["mean_trace_distance"] = r.mean_trace_distance;
          d["trace_distance_stderr"] = r.trace_distance_stderr;
          d["outcome_counts"] = r.outcome_counts;
          d["analytic_fidelity"] = mean_fidelity(in, rho, s);
          d["analytic_trace_distance"] = mean_trace_distance(in, rho, s);
          return d;
        },
        py::arg("rho"), py::arg("theta"), py::arg("chi"), py::arg("set") = "Phi+",
        py::arg("runs") = 100000, py::arg("seed") = 0);
}
