#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcpd/coherence.hpp"
#include "qcpd/discord.hpp"
#include "qcpd/models.hpp"
#include "qcpd/teleport.hpp"
#include "qcpd/xstate.hpp"

namespace qcpd {

/// Hamiltonian parameter varied along a sweep.
enum class ControlAxis { Delta, Field, Lambda, Gamma };

enum class Detector { QD, SqcX, SqcY, SqcZ, LqcX, LqcY, LqcZ, FmaxExt, DminInt, Z, XX, YY, ZZ };

inline constexpr std::array<Detector, 13> kAllDetectors = {
    Detector::QD,   Detector::SqcX,    Detector::SqcY,    Detector::SqcZ, Detector::LqcX,
    Detector::LqcY, Detector::LqcZ,    Detector::FmaxExt, Detector::DminInt, Detector::Z,
    Detector::XX,   Detector::YY,      Detector::ZZ};

std::string_view axis_name(ControlAxis axis) noexcept;
std::optional<ControlAxis> parse_control_axis(std::string_view name) noexcept;

/// Names match the sweep CSV columns: qd, sqc_x, ..., fmax_ext, dmin_int, z, xx, yy, zz.
std::string_view detector_name(Detector detector) noexcept;
std::optional<Detector> parse_detector(std::string_view name) noexcept;

/// Where a sweep obtains its correlators.
enum class CorrelatorSource {
  /// Finite periodic chain, exact diagonalization.
  ExactDiagonalization,
  /// Free-fermion solution at L = infinity (XY family only).
  ThermodynamicLimit,
};

/// Every detector evaluated on one two-qubit state.
struct DetectorSet {
  DiscordResult qd;
  std::array<double, 3> sqc{};        // x, y, z
  std::array<DetectorValue, 3> lqc{};  // x, y, z
  BranchValue fmax;
  BranchValue dmin;
};

DetectorSet evaluate_detectors(const XState& rho);

struct SweepRecord {
  double param = 0.0;
  bool ok = false;
  std::string error;
  Correlators corr;
  XState rho = XState::maximally_mixed();
  DetectorSet detectors;

  /// The detector reading, or nullopt for a failed point or a divergent
  /// logarithm of the spectrum.
  std::optional<double> value(Detector detector) const;
};

struct SweepSpec {
  /// Template; the control parameter is overwritten per grid point and kT
  /// is taken from `temperatures`.
  ModelSpec model;
  ControlAxis axis = ControlAxis::Delta;
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;
  std::vector<double> temperatures;
  CorrelatorSource source = CorrelatorSource::ExactDiagonalization;
  Solver solver = Solver::Sectors;
  int workers = 1;
};

struct SweepResult {
  ModelSpec model;
  ControlAxis axis = ControlAxis::Delta;
  CorrelatorSource source = CorrelatorSource::ExactDiagonalization;
  double step = 0.01;
  double kT = 0.0;
  std::vector<SweepRecord> records;  // one per grid point, ascending param

  std::vector<double> grid() const;
  std::vector<std::optional<double>> series(Detector detector) const;
  std::size_t failed_points() const;
};

/// start, start + step, ..., stop (inclusive up to 1e-9 relative slack).
std::vector<double> make_grid(double start, double stop, double step);

/// Sets the parameter selected by `axis` on `spec`.
void set_control(ModelSpec& spec, ControlAxis axis, double value) noexcept;

/// One SweepResult per temperature. Grid points are evaluated on up to
/// `workers` threads; the output does not depend on the worker count.
/// Throws std::invalid_argument for an invalid spec; per-point failures are
/// recorded in the records instead.
std::vector<SweepResult> sweep(const SweepSpec& spec);

enum class DiffMethod { Forward, Central, Backward };

std::string_view method_name(DiffMethod method) noexcept;
std::optional<DiffMethod> parse_method(std::string_view name) noexcept;

/// Finite-difference derivative on a uniform grid. Order 2 applies the same
/// stencil twice. Points whose stencil leaves the grid or touches an
/// undefined value are undefined.
std::vector<std::optional<double>> derivative(std::span<const std::optional<double>> values,
                                              double step, DiffMethod method, int order);

enum class Extremum {
  /// Largest |derivative|.
  MaxAbs,
  Max,
  Min,
};

std::string_view extremum_name(Extremum e) noexcept;
std::optional<Extremum> parse_extremum(std::string_view name) noexcept;

struct SearchWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct QcpEstimate {
  double kT = 0.0;
  std::string detector;
  int order = 1;
  DiffMethod method = DiffMethod::Forward;
  double estimate = 0.0;
  /// step * order.
  double uncertainty = 0.0;
};

/// Grid point inside `window` where the order-th derivative is extremal.
/// Ties go to the smaller control value. Throws std::runtime_error when no
/// derivative is defined inside the window.
QcpEstimate estimate_qcp(std::span<const double> grid, std::span<const std::optional<double>> values,
                         double step, int order, DiffMethod method, SearchWindow window,
                         Extremum extremum = Extremum::MaxAbs);

QcpEstimate estimate_qcp(const SweepResult& sweep, Detector detector, int order,
                         DiffMethod method, SearchWindow window,
                         Extremum extremum = Extremum::MaxAbs);

struct Extrapolation {
  double intercept = 0.0;
  double intercept_stderr = 0.0;
  double slope = 0.0;
  std::size_t points = 0;
};

/// Least-squares line estimate(kT); returns its kT = 0 intercept. Needs at
/// least three estimates and two distinct temperatures.
Extrapolation extrapolate_to_zero(std::span<const QcpEstimate> estimates);

}  // namespace qcpd
