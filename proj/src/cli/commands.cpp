#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "qcpd/cli.hpp"

namespace qcpd::cli {

namespace {

constexpr std::array<Detector, 5> kDefaultTargets = {Detector::QD, Detector::SqcX, Detector::SqcZ,
                                                     Detector::FmaxExt, Detector::DminInt};

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path(), ec);
  if (ec) throw ConfigError("cannot create output directory " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

// Runs a command body and maps exceptions onto exit codes.
template <typename Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& err) {
    log << "config error: " << err.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& err) {
    log << "computation error: " << err.what() << '\n';
    return kExitCompute;
  }
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t begin = 0;
  while (true) {
    const auto end = line.find(',', begin);
    cells.push_back(line.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    throw ConfigError("sweep file line " + std::to_string(line_no) + ": bad number '" +
                      std::string(cell) + "'");
  }
  return v;
}

void set_column(SweepRecord& rec, Detector d, double v) {
  auto& det = rec.detectors;
  switch (d) {
    case Detector::QD:
      det.qd.value = v;
      break;
    case Detector::SqcX:
      det.sqc[0] = v;
      break;
    case Detector::SqcY:
      det.sqc[1] = v;
      break;
    case Detector::SqcZ:
      det.sqc[2] = v;
      break;
    case Detector::LqcX:
    case Detector::LqcY:
    case Detector::LqcZ: {
      auto& l = det.lqc[static_cast<std::size_t>(d) - static_cast<std::size_t>(Detector::LqcX)];
      l.value = v;
      l.divergent = l.divergent || std::isinf(v);
      break;
    }
    case Detector::FmaxExt:
      det.fmax.value = v;
      break;
    case Detector::DminInt:
      det.dmin.value = v;
      break;
    case Detector::Z:
      rec.corr.z = v;
      break;
    case Detector::XX:
      rec.corr.xx = v;
      break;
    case Detector::YY:
      rec.corr.yy = v;
      break;
    case Detector::ZZ:
      rec.corr.zz = v;
      break;
  }
}

std::vector<SweepResult> sweep_or_load(const RunConfig& config, std::vector<Detector>* columns,
                                       std::ostream& log) {
  if (config.input) {
    std::ifstream in(*config.input, std::ios::binary);
    if (!in) throw ConfigError("cannot read sweep file " + config.input->string());
    SweepTable table = read_sweep_csv(in);
    log << "read " << table.results.size() << " temperature(s) from " << config.input->string()
        << '\n';
    *columns = table.columns;
    return std::move(table.results);
  }
  columns->assign(kAllDetectors.begin(), kAllDetectors.end());
  return sweep(config.sweep_spec());
}

double control_value(const ModelSpec& m, ControlAxis axis) {
  switch (axis) {
    case ControlAxis::Delta:
      return m.delta;
    case ControlAxis::Field:
      return m.field;
    case ControlAxis::Lambda:
      return m.lambda;
    case ControlAxis::Gamma:
      return m.gamma;
  }
  return 0.0;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

std::string sweep_file_name(double kT) { return "sweep_kT" + format_number(kT) + ".csv"; }

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << kSweepHeader << '\n';
  const std::string kt = format_number(result.kT);
  for (const SweepRecord& r : result.records) {
    os << format_number(r.param) << ',' << kt;
    if (!r.ok) {
      for (int i = 0; i < 19; ++i) os << ",nan";
      os << '\n';
      continue;
    }
    const DetectorSet& d = r.detectors;
    for (double v : {r.corr.z, r.corr.xx, r.corr.yy, r.corr.zz, d.qd.value, d.qd.theta_star,
                     d.sqc[0], d.sqc[1], d.sqc[2]}) {
      os << ',' << format_number(v);
    }
    for (const DetectorValue& l : d.lqc) {
      os << ',' << format_number(l.divergent ? std::numeric_limits<double>::infinity() : l.value);
    }
    for (const DetectorValue& l : d.lqc) os << ',' << (l.divergent ? '1' : '0');
    os << ',' << format_number(d.fmax.value) << ',' << d.fmax.branch << ','
       << format_number(d.dmin.value) << ',' << d.dmin.branch << '\n';
  }
}

SweepTable read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("sweep file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  std::optional<std::size_t> param_col, kt_col;
  std::vector<std::pair<std::size_t, Detector>> detector_cols;
  std::array<std::optional<std::size_t>, 3> divergent_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string_view name = header[i];
    if (name == "param") {
      param_col = i;
    } else if (name == "kT") {
      kt_col = i;
    } else if (const auto d = parse_detector(name)) {
      detector_cols.emplace_back(i, *d);
    } else if (name == "lqc_x_divergent" || name == "lqc_y_divergent" || name == "lqc_z_divergent") {
      divergent_cols[static_cast<std::size_t>(name[4] - 'x')] = i;
    }
  }
  if (!param_col || !kt_col) throw ConfigError("sweep file needs param and kT columns");

  std::map<double, std::vector<SweepRecord>> by_kt;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ConfigError("sweep file line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells");
    }
    SweepRecord rec;
    rec.param = parse_cell(cells[*param_col], line_no);
    rec.ok = true;
    for (std::size_t k = 0; k < 3; ++k) {
      if (divergent_cols[k]) rec.detectors.lqc[k].divergent = cells[*divergent_cols[k]] == "1";
    }
    for (const auto& [col, det] : detector_cols) {
      const double v = parse_cell(cells[col], line_no);
      if (std::isnan(v)) rec.ok = false;
      set_column(rec, det, v);
    }
    by_kt[parse_cell(cells[*kt_col], line_no)].push_back(std::move(rec));
  }
  if (by_kt.empty()) throw ConfigError("sweep file has no data rows");

  SweepTable table;
  for (const auto& [col, det] : detector_cols) table.columns.push_back(det);
  for (auto& [kt, records] : by_kt) {
    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.param < b.param; });
    if (records.size() < 3) throw ConfigError("sweep file needs at least three points per kT");
    const double step = (records.back().param - records.front().param) / (records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) {
      if (std::abs(records[i].param - records[i - 1].param - step) > 1e-6 * step) {
        throw ConfigError("sweep file grid is not uniform at kT = " + format_number(kt));
      }
    }
    SweepResult r;
    r.kT = kt;
    r.step = step;
    r.records = std::move(records);
    table.results.push_back(std::move(r));
  }
  return table;
}

int cmd_sweep(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    config.validate();
    const auto results = sweep(config.sweep_spec());
    std::size_t failed = 0;
    for (const SweepResult& r : results) {
      const auto path = config.out / sweep_file_name(r.kT);
      std::ofstream out = open_output(path);
      write_sweep_csv(out, r);
      close_output(out, path);
      log << "wrote " << path.string() << " (" << r.records.size() << " rows)\n";
      for (const SweepRecord& rec : r.records) {
        if (rec.ok) continue;
        ++failed;
        log << "point " << format_number(rec.param) << " kT " << format_number(r.kT)
            << " failed: " << rec.error << '\n';
      }
    }
    return failed == 0 ? kExitOk : kExitCompute;
  });
}

int cmd_estimate(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    if (!config.input) config.validate();
    std::vector<EstimateTarget> targets = config.targets;
    if (targets.empty()) {
      for (Detector d : kDefaultTargets) targets.push_back({d, std::nullopt, std::nullopt});
    }
    std::vector<Detector> columns;
    const std::vector<SweepResult> results = sweep_or_load(config, &columns, log);
    for (const EstimateTarget& t : targets) {
      if (std::find(columns.begin(), columns.end(), t.detector) == columns.end()) {
        throw ConfigError("sweep data has no column " + std::string(detector_name(t.detector)));
      }
    }
    SearchWindow window = config.window();
    if (config.input && !config.window_lo && !config.window_hi && !config.candidate) {
      window = {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }

    const auto est_path = config.out / "estimates.csv";
    const auto fit_path = config.out / "extrapolation.csv";
    std::ofstream est_out = open_output(est_path);
    std::ofstream fit_out = open_output(fit_path);
    est_out << kEstimateHeader << '\n';
    fit_out << kExtrapolationHeader << '\n';

    bool all_ok = true;
    for (const EstimateTarget& t : targets) {
      const int order = t.order.value_or(config.order);
      const Extremum extremum = t.extremum.value_or(config.extremum);
      const std::string name(detector_name(t.detector));
      std::vector<QcpEstimate> estimates;
      for (const SweepResult& r : results) {
        try {
          QcpEstimate e = estimate_qcp(r, t.detector, order, config.method, window, extremum);
          est_out << e.detector << ',' << format_number(e.kT) << ',' << method_name(e.method) << ','
                  << e.order << ',' << format_number(e.estimate) << ','
                  << format_number(e.uncertainty) << '\n';
          if (std::isfinite(e.kT) && e.kT <= config.fit_max_kT) estimates.push_back(std::move(e));
        } catch (const std::runtime_error& err) {
          all_ok = false;
          log << name << " at kT " << format_number(r.kT) << ": " << err.what() << '\n';
        }
      }
      fit_out << name << ',' << method_name(config.method) << ',' << order << ',' << estimates.size();
      try {
        const Extrapolation x = extrapolate_to_zero(estimates);
        fit_out << ',' << format_number(x.intercept) << ',' << format_number(x.intercept_stderr) << ','
                << format_number(x.slope) << '\n';
        log << name << " (order " << order << ", " << method_name(config.method)
            << "): T -> 0 intercept " << format_number(x.intercept) << " +- "
            << format_number(x.intercept_stderr) << " from " << x.points << " temperatures\n";
      } catch (const std::invalid_argument& err) {
        fit_out << ",nan,nan,nan\n";
        log << name << ": no extrapolation (" << err.what() << ")\n";
      }
    }
    close_output(est_out, est_path);
    close_output(fit_out, fit_path);
    log << "wrote " << est_path.string() << " and " << fit_path.string() << '\n';
    return all_ok ? kExitOk : kExitCompute;
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    config.validate();
    ModelSpec model = config.model;
    const double param = config.sim_param.value_or(control_value(model, config.control_axis()));
    set_control(model, config.control_axis(), param);

    const auto path = config.out / "simulate.csv";
    std::ofstream out = open_output(path);
    out << "param,kT,input,set,runs,seed,mean_fidelity,fidelity_stderr,analytic_fidelity,"
           "mean_trace_distance,trace_distance_stderr,analytic_trace_distance,"
           "count_phi_plus,count_phi_minus,count_psi_plus,count_psi_minus\n";

    std::optional<ThermalSolution> solution;
    if (config.source == CorrelatorSource::ExactDiagonalization) solution = diagonalize(model);
    for (std::size_t t = 0; t < config.temperatures.size(); ++t) {
      const double kT = config.temperatures[t];
      const Correlators corr = solution ? solution->correlators(kT)
                                        : xy_thermo_correlators(model.lambda, model.gamma, kT);
      const XState rho = build_xstate(corr);
      const bool pure = config.sim_input == SimInput::Pure;
      const InputQubit input =
          pure ? InputQubit::pure(config.sim_theta, config.sim_chi) : InputQubit::internal(rho);

      BellState label = BellState::PhiPlus;
      if (config.sim_set) {
        label = *config.sim_set;
      } else {
        double best = pure ? -1.0 : 2.0;
        for (BellState k : kBellStates) {
          const double v = pure ? mean_fidelity(input, rho, correction_set(k))
                                : mean_trace_distance(input, rho, correction_set(k));
          if (pure ? v > best : v < best) {
            best = v;
            label = k;
          }
        }
      }
      const CorrectionSet set = correction_set(label);
      const std::uint64_t seed = config.seed + t;
      const SimulationResult r = simulate_protocol(rho, input, set, config.sim_runs, seed);
      const double f = mean_fidelity(input, rho, set);
      const double d = mean_trace_distance(input, rho, set);
      out << format_number(param) << ',' << format_number(kT) << ',' << (pure ? "pure" : "internal")
          << ',' << bell_key(label) << ',' << r.runs << ',' << seed << ','
          << format_number(r.mean_fidelity) << ',' << format_number(r.fidelity_stderr) << ','
          << format_number(f) << ',' << format_number(r.mean_trace_distance) << ','
          << format_number(r.trace_distance_stderr) << ',' << format_number(d);
      for (auto c : r.outcome_counts) out << ',' << c;
      out << '\n';
      log << "kT " << format_number(kT) << " set " << bell_key(label) << ": fidelity "
          << format_number(r.mean_fidelity) << " +- " << format_number(r.fidelity_stderr)
          << " (analytic " << format_number(f) << "), trace distance "
          << format_number(r.mean_trace_distance) << " +- "
          << format_number(r.trace_distance_stderr) << " (analytic " << format_number(d) << ")\n";
    }
    close_output(out, path);
    log << "wrote " << path.string() << '\n';
    return kExitOk;
  });
}

}  // namespace qcpd::cli
