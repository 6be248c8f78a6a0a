#include "qcpd/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qcpd {

std::string_view axis_name(ControlAxis axis) noexcept {
  switch (axis) {
    case ControlAxis::Delta:
      return "delta";
    case ControlAxis::Field:
      return "field";
    case ControlAxis::Lambda:
      return "lambda";
    case ControlAxis::Gamma:
      return "gamma";
  }
  return "?";
}

std::optional<ControlAxis> parse_control_axis(std::string_view name) noexcept {
  for (ControlAxis a : {ControlAxis::Delta, ControlAxis::Field, ControlAxis::Lambda,
                        ControlAxis::Gamma}) {
    if (axis_name(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view detector_name(Detector detector) noexcept {
  switch (detector) {
    case Detector::QD:
      return "qd";
    case Detector::SqcX:
      return "sqc_x";
    case Detector::SqcY:
      return "sqc_y";
    case Detector::SqcZ:
      return "sqc_z";
    case Detector::LqcX:
      return "lqc_x";
    case Detector::LqcY:
      return "lqc_y";
    case Detector::LqcZ:
      return "lqc_z";
    case Detector::FmaxExt:
      return "fmax_ext";
    case Detector::DminInt:
      return "dmin_int";
    case Detector::Z:
      return "z";
    case Detector::XX:
      return "xx";
    case Detector::YY:
      return "yy";
    case Detector::ZZ:
      return "zz";
  }
  return "?";
}

std::optional<Detector> parse_detector(std::string_view name) noexcept {
  for (Detector d : kAllDetectors) {
    if (detector_name(d) == name) return d;
  }
  return std::nullopt;
}

DetectorSet evaluate_detectors(const XState& rho) {
  DetectorSet out;
  out.qd = quantum_discord(rho);
  const std::array<Axis, 3> axes = {Axis::X, Axis::Y, Axis::Z};
  for (std::size_t i = 0; i < 3; ++i) {
    out.sqc[i] = coherence_entropy(rho, axes[i]);
    out.lqc[i] = log_spectrum(rho, axes[i]);
  }
  out.fmax = max_mean_fidelity(rho);
  out.dmin = min_mean_trace_distance(rho);
  return out;
}

std::optional<double> SweepRecord::value(Detector detector) const {
  if (!ok) return std::nullopt;
  const auto lqc = [](const DetectorValue& v) -> std::optional<double> {
    if (v.divergent || !std::isfinite(v.value)) return std::nullopt;
    return v.value;
  };
  switch (detector) {
    case Detector::QD:
      return detectors.qd.value;
    case Detector::SqcX:
      return detectors.sqc[0];
    case Detector::SqcY:
      return detectors.sqc[1];
    case Detector::SqcZ:
      return detectors.sqc[2];
    case Detector::LqcX:
      return lqc(detectors.lqc[0]);
    case Detector::LqcY:
      return lqc(detectors.lqc[1]);
    case Detector::LqcZ:
      return lqc(detectors.lqc[2]);
    case Detector::FmaxExt:
      return detectors.fmax.value;
    case Detector::DminInt:
      return detectors.dmin.value;
    case Detector::Z:
      return corr.z;
    case Detector::XX:
      return corr.xx;
    case Detector::YY:
      return corr.yy;
    case Detector::ZZ:
      return corr.zz;
  }
  return std::nullopt;
}

std::vector<double> SweepResult::grid() const {
  std::vector<double> g;
  g.reserve(records.size());
  for (const auto& r : records) g.push_back(r.param);
  return g;
}

std::vector<std::optional<double>> SweepResult::series(Detector detector) const {
  std::vector<std::optional<double>> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.value(detector));
  return out;
}

std::size_t SweepResult::failed_points() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.ok ? 0 : 1;
  return n;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
    throw std::invalid_argument("grid range must satisfy start < stop");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

void set_control(ModelSpec& spec, ControlAxis axis, double value) noexcept {
  switch (axis) {
    case ControlAxis::Delta:
      spec.delta = value;
      break;
    case ControlAxis::Field:
      spec.field = value;
      break;
    case ControlAxis::Lambda:
      spec.lambda = value;
      break;
    case ControlAxis::Gamma:
      spec.gamma = value;
      break;
  }
}

namespace {

void fill_record(SweepRecord& rec, const Correlators& corr) {
  rec.corr = corr;
  try {
    rec.rho = build_xstate(corr);
    rec.detectors = evaluate_detectors(rec.rho);
    rec.ok = true;
  } catch (const std::exception& ex) {
    rec.ok = false;
    rec.error = ex.what();
  }
}

// Evaluates one grid point at every temperature.
void evaluate_point(const SweepSpec& spec, double param, std::vector<SweepRecord>& out) {
  ModelSpec model = spec.model;
  set_control(model, spec.axis, param);
  for (auto& rec : out) rec.param = param;
  try {
    if (spec.source == CorrelatorSource::ThermodynamicLimit) {
      for (std::size_t t = 0; t < spec.temperatures.size(); ++t) {
        fill_record(out[t], xy_thermo_correlators(model.lambda, model.gamma, spec.temperatures[t]));
      }
    } else {
      const ThermalSolution solution = diagonalize(model, spec.solver);
      for (std::size_t t = 0; t < spec.temperatures.size(); ++t) {
        fill_record(out[t], solution.correlators(spec.temperatures[t]));
      }
    }
  } catch (const std::exception& ex) {
    for (auto& rec : out) {
      rec.ok = false;
      rec.error = ex.what();
    }
  }
}

}  // namespace

std::vector<SweepResult> sweep(const SweepSpec& spec) {
  if (spec.temperatures.empty()) throw std::invalid_argument("sweep needs at least one kT");
  for (double t : spec.temperatures) {
    if (std::isnan(t) || t < 0.0) throw std::invalid_argument("kT values must be nonnegative");
  }
  if (spec.source == CorrelatorSource::ThermodynamicLimit && spec.model.family != Family::XY) {
    throw std::invalid_argument("thermodynamic-limit correlators exist only for the XY family");
  }
  if (spec.source == CorrelatorSource::ExactDiagonalization) {
    ModelSpec probe = spec.model;
    set_control(probe, spec.axis, spec.start);
    probe.validate();
  }
  const std::vector<double> grid = make_grid(spec.start, spec.stop, spec.step);
  const std::size_t nt = spec.temperatures.size();

  // per_point[i][t]
  std::vector<std::vector<SweepRecord>> per_point(grid.size(), std::vector<SweepRecord>(nt));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      evaluate_point(spec, grid[i], per_point[i]);
    }
  };
  const int workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(grid.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<SweepResult> results(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    SweepResult& r = results[t];
    r.model = spec.model;
    r.model.kT = spec.temperatures[t];
    r.axis = spec.axis;
    r.source = spec.source;
    r.step = spec.step;
    r.kT = spec.temperatures[t];
    r.records.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) r.records.push_back(std::move(per_point[i][t]));
  }
  return results;
}

std::string_view method_name(DiffMethod method) noexcept {
  switch (method) {
    case DiffMethod::Forward:
      return "forward";
    case DiffMethod::Central:
      return "central";
    case DiffMethod::Backward:
      return "backward";
  }
  return "?";
}

std::optional<DiffMethod> parse_method(std::string_view name) noexcept {
  for (DiffMethod m : {DiffMethod::Forward, DiffMethod::Central, DiffMethod::Backward}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view extremum_name(Extremum e) noexcept {
  switch (e) {
    case Extremum::MaxAbs:
      return "maxabs";
    case Extremum::Max:
      return "max";
    case Extremum::Min:
      return "min";
  }
  return "?";
}

std::optional<Extremum> parse_extremum(std::string_view name) noexcept {
  for (Extremum e : {Extremum::MaxAbs, Extremum::Max, Extremum::Min}) {
    if (extremum_name(e) == name) return e;
  }
  return std::nullopt;
}

namespace {

std::vector<std::optional<double>> first_difference(std::span<const std::optional<double>> f,
                                                    double step, DiffMethod method) {
  const std::size_t n = f.size();
  std::vector<std::optional<double>> out(n);
  const auto at = [&](std::ptrdiff_t i) -> std::optional<double> {
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) return std::nullopt;
    return f[static_cast<std::size_t>(i)];
  };
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k);
    std::optional<double> lo, hi;
    double width = step;
    switch (method) {
      case DiffMethod::Forward:
        lo = at(i);
        hi = at(i + 1);
        break;
      case DiffMethod::Central:
        lo = at(i - 1);
        hi = at(i + 1);
        width = 2.0 * step;
        break;
      case DiffMethod::Backward:
        lo = at(i - 1);
        hi = at(i);
        break;
    }
    if (lo && hi) out[k] = (*hi - *lo) / width;
  }
  return out;
}

}  // namespace

std::vector<std::optional<double>> derivative(std::span<const std::optional<double>> values,
                                              double step, DiffMethod method, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  if (!(step > 0.0)) throw std::invalid_argument("derivative step must be positive");
  if (values.size() < 3) throw std::invalid_argument("derivative needs at least three points");
  auto first = first_difference(values, step, method);
  if (order == 1) return first;
  return first_difference(first, step, method);
}

QcpEstimate estimate_qcp(std::span<const double> grid, std::span<const std::optional<double>> values,
                         double step, int order, DiffMethod method, SearchWindow window,
                         Extremum extremum) {
  if (grid.size() != values.size()) throw std::invalid_argument("grid and values differ in size");
  if (!(window.hi >= window.lo)) throw std::invalid_argument("search window is empty");
  const auto deriv = derivative(values, step, method, order);
  const double slack = 1e-9 * step;

  std::optional<std::size_t> best;
  double best_score = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < window.lo - slack || grid[i] > window.hi + slack || !deriv[i]) continue;
    const double d = *deriv[i];
    const double score = extremum == Extremum::MaxAbs ? std::abs(d)
                         : extremum == Extremum::Max  ? d
                                                      : -d;
    if (!best || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "no defined derivative inside the window [" << window.lo << ", " << window.hi << "]";
    throw std::runtime_error(msg.str());
  }
  QcpEstimate est;
  est.order = order;
  est.method = method;
  est.estimate = grid[*best];
  est.uncertainty = step * order;
  return est;
}

QcpEstimate estimate_qcp(const SweepResult& sweep, Detector detector, int order,
                         DiffMethod method, SearchWindow window, Extremum extremum) {
  const auto grid = sweep.grid();
  const auto values = sweep.series(detector);
  QcpEstimate est = estimate_qcp(grid, values, sweep.step, order, method, window, extremum);
  est.kT = sweep.kT;
  est.detector = std::string(detector_name(detector));
  return est;
}

Extrapolation extrapolate_to_zero(std::span<const QcpEstimate> estimates) {
  const std::size_t n = estimates.size();
  if (n < 3) throw std::invalid_argument("extrapolation needs at least three temperatures");
  double mean_t = 0.0, mean_y = 0.0;
  for (const auto& e : estimates) {
    mean_t += e.kT;
    mean_y += e.estimate;
  }
  mean_t /= n;
  mean_y /= n;
  double stt = 0.0, sty = 0.0, t2 = 0.0;
  for (const auto& e : estimates) {
    stt += (e.kT - mean_t) * (e.kT - mean_t);
    sty += (e.kT - mean_t) * (e.estimate - mean_y);
    t2 += e.kT * e.kT;
  }
  const bool all_equal = std::all_of(estimates.begin(), estimates.end(),
                                     [&](const QcpEstimate& e) { return e.kT == estimates[0].kT; });
  if (all_equal || !(stt > 0.0)) {
    throw std::invalid_argument("extrapolation needs distinct temperatures");
  }
  Extrapolation fit;
  fit.points = n;
  fit.slope = sty / stt;
  fit.intercept = mean_y - fit.slope * mean_t;
  double rss = 0.0;
  for (const auto& e : estimates) {
    const double r = e.estimate - (fit.intercept + fit.slope * e.kT);
    rss += r * r;
  }
  const double sigma2 = n > 2 ? rss / static_cast<double>(n - 2) : 0.0;
  fit.intercept_stderr = std::sqrt(sigma2 * t2 / (static_cast<double>(n) * stt));
  return fit;
}

}  // namespace qcpd
