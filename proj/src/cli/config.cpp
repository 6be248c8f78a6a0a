#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qcpd/cli.hpp"

namespace qcpd::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const auto end = s.find(sep, begin);
    parts.push_back(trim(s.substr(begin, end - begin)));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  std::ostringstream msg;
  msg << "invalid value '" << value << "' for " << key << ": " << why;
  throw ConfigError(msg.str());
}

double to_double(std::string_view key, std::string_view value) {
  if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) bad_value(key, value, "expected a number");
  if (std::isnan(out)) bad_value(key, value, "expected a number");
  return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value) {
  Int out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) bad_value(key, value, "expected an integer");
  return out;
}

std::optional<BellState> parse_bell(std::string_view name) {
  for (BellState b : kBellStates) {
    if (bell_key(b) == name) return b;
  }
  return std::nullopt;
}

EstimateTarget parse_target(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() > 3) bad_value("detectors", text, "expected detector[:order[:extremum]]");
  EstimateTarget t;
  const auto d = parse_detector(parts[0]);
  if (!d) bad_value("detectors", parts[0], "unknown detector");
  t.detector = *d;
  if (parts.size() > 1 && !parts[1].empty()) {
    t.order = to_int<int>("detectors", parts[1]);
    if (*t.order != 1 && *t.order != 2) bad_value("detectors", text, "order must be 1 or 2");
  }
  if (parts.size() > 2) {
    t.extremum = parse_extremum(parts[2]);
    if (!t.extremum) bad_value("detectors", parts[2], "expected maxabs, max or min");
  }
  return t;
}

}  // namespace

std::string_view bell_key(BellState state) noexcept {
  switch (state) {
    case BellState::PhiPlus:
      return "phi_plus";
    case BellState::PhiMinus:
      return "phi_minus";
    case BellState::PsiPlus:
      return "psi_plus";
    case BellState::PsiMinus:
      return "psi_minus";
  }
  return "?";
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "family") {
    if (value == "xxz") {
      c.model.family = Family::XXZ;
    } else if (value == "xxz_field") {
      c.model.family = Family::XXZField;
    } else if (value == "xy") {
      c.model.family = Family::XY;
    } else {
      bad_value(key, value, "expected xxz, xxz_field or xy");
    }
  } else if (key == "delta") {
    c.model.delta = to_double(key, value);
  } else if (key == "field") {
    c.model.field = to_double(key, value);
  } else if (key == "lambda") {
    c.model.lambda = to_double(key, value);
  } else if (key == "gamma") {
    c.model.gamma = to_double(key, value);
  } else if (key == "L") {
    c.model.length = to_int<int>(key, value);
  } else if (key == "max_L") {
    c.model.max_length = to_int<int>(key, value);
  } else if (key == "axis") {
    c.axis = parse_control_axis(value);
    if (!c.axis) bad_value(key, value, "expected delta, field, lambda or gamma");
  } else if (key == "start") {
    c.start = to_double(key, value);
  } else if (key == "stop") {
    c.stop = to_double(key, value);
  } else if (key == "step") {
    c.step = to_double(key, value);
  } else if (key == "kT") {
    c.temperatures.clear();
    for (auto part : split(value, ',')) c.temperatures.push_back(to_double(key, part));
  } else if (key == "source") {
    if (value == "ed") {
      c.source = CorrelatorSource::ExactDiagonalization;
    } else if (value == "thermo") {
      c.source = CorrelatorSource::ThermodynamicLimit;
    } else {
      bad_value(key, value, "expected ed or thermo");
    }
  } else if (key == "detectors") {
    c.targets.clear();
    for (auto part : split(value, ',')) c.targets.push_back(parse_target(part));
  } else if (key == "method") {
    const auto m = parse_method(value);
    if (!m) bad_value(key, value, "expected forward, central or backward");
    c.method = *m;
  } else if (key == "order") {
    c.order = to_int<int>(key, value);
    if (c.order != 1 && c.order != 2) bad_value(key, value, "order must be 1 or 2");
  } else if (key == "extremum") {
    const auto e = parse_extremum(value);
    if (!e) bad_value(key, value, "expected maxabs, max or min");
    c.extremum = *e;
  } else if (key == "window_lo") {
    c.window_lo = to_double(key, value);
  } else if (key == "window_hi") {
    c.window_hi = to_double(key, value);
  } else if (key == "candidate") {
    c.candidate = to_double(key, value);
  } else if (key == "window_halfwidth") {
    c.window_halfwidth = to_double(key, value);
  } else if (key == "fit_max_kT") {
    c.fit_max_kT = to_double(key, value);
  } else if (key == "input") {
    c.input = std::filesystem::path(std::string(value));
  } else if (key == "out") {
    c.out = std::filesystem::path(std::string(value));
  } else if (key == "workers") {
    c.workers = to_int<int>(key, value);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, value);
  } else if (key == "sim_runs") {
    c.sim_runs = to_int<std::uint64_t>(key, value);
  } else if (key == "sim_input") {
    if (value == "pure") {
      c.sim_input = SimInput::Pure;
    } else if (value == "internal") {
      c.sim_input = SimInput::Internal;
    } else {
      bad_value(key, value, "expected pure or internal");
    }
  } else if (key == "sim_theta") {
    c.sim_theta = to_double(key, value);
  } else if (key == "sim_chi") {
    c.sim_chi = to_double(key, value);
  } else if (key == "sim_set") {
    if (value == "best") {
      c.sim_set.reset();
    } else {
      c.sim_set = parse_bell(value);
      if (!c.sim_set) bad_value(key, value, "expected phi_plus, phi_minus, psi_plus, psi_minus or best");
    }
  } else if (key == "sim_param") {
    c.sim_param = to_double(key, value);
  } else if (key == "verify_samples") {
    c.verify_samples = to_int<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str(), std::move(base));
  } catch (const ConfigError& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
}

ControlAxis RunConfig::control_axis() const noexcept {
  if (axis) return *axis;
  return model.family == Family::XY ? ControlAxis::Lambda : ControlAxis::Delta;
}

SearchWindow RunConfig::window() const {
  if (window_lo || window_hi) return {window_lo.value_or(start), window_hi.value_or(stop)};
  if (candidate) return {*candidate - window_halfwidth, *candidate + window_halfwidth};
  return {start, stop};
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  s.model = model;
  s.axis = control_axis();
  s.start = start;
  s.stop = stop;
  s.step = step;
  s.temperatures = temperatures;
  s.source = source;
  s.workers = workers;
  return s;
}

void RunConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(step > 0.0) || !std::isfinite(step)) fail("step must be positive");
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
    fail("start must be below stop");
  }
  if ((stop - start) / step < 2.0 - 1e-9) fail("the sweep needs at least three grid points");
  if (temperatures.empty()) fail("kT needs at least one value");
  for (double t : temperatures) {
    if (t < 0.0) fail("kT values must be nonnegative");
  }
  if (workers < 1) fail("workers must be at least 1");
  if (!(window_halfwidth > 0.0)) fail("window_halfwidth must be positive");
  const SearchWindow w = window();
  if (!(w.hi >= w.lo)) fail("search window is empty");
  if (source == CorrelatorSource::ThermodynamicLimit) {
    if (model.family != Family::XY) fail("source = thermo needs family = xy");
    if (control_axis() != ControlAxis::Lambda && control_axis() != ControlAxis::Gamma) {
      fail("the xy family is swept along lambda or gamma");
    }
  } else {
    ModelSpec probe = model;
    set_control(probe, control_axis(), start);
    try {
      probe.validate();
    } catch (const std::invalid_argument& err) {
      fail(err.what());
    }
  }
  const ControlAxis a = control_axis();
  const bool xy = model.family == Family::XY;
  if (xy != (a == ControlAxis::Lambda || a == ControlAxis::Gamma)) {
    fail("axis " + std::string(axis_name(a)) + " does not apply to family " +
         std::string(family_name(model.family)));
  }
  if (a == ControlAxis::Field && model.family != Family::XXZField) {
    fail("axis field needs family = xxz_field");
  }
  if (sim_runs < 1) fail("sim_runs must be at least 1");
}

}  // namespace qcpd::cli
