#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcpd/scan.hpp"

namespace qcpd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitCompute = 2,
  kExitVerify = 3,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One detector requested by `estimate`, written detector[:order[:extremum]]
/// in the config. Missing parts fall back to the `order` and `extremum` keys.
struct EstimateTarget {
  Detector detector = Detector::QD;
  std::optional<int> order;
  std::optional<Extremum> extremum;
};

enum class SimInput { Pure, Internal };

/// phi_plus, phi_minus, psi_plus, psi_minus.
std::string_view bell_key(BellState state) noexcept;

struct RunConfig {
  ModelSpec model;
  /// Unset means delta for the XXZ families and lambda for XY.
  std::optional<ControlAxis> axis;
  double start = -2.0;
  double stop = 2.0;
  double step = 0.01;
  std::vector<double> temperatures = {1.0};
  CorrelatorSource source = CorrelatorSource::ExactDiagonalization;

  /// Empty means qd, sqc_x, sqc_z, fmax_ext, dmin_int.
  std::vector<EstimateTarget> targets;
  DiffMethod method = DiffMethod::Forward;
  int order = 1;
  Extremum extremum = Extremum::MaxAbs;
  std::optional<double> window_lo;
  std::optional<double> window_hi;
  std::optional<double> candidate;
  double window_halfwidth = 0.5;
  /// Only estimates with kT <= fit_max_kT enter the extrapolation.
  double fit_max_kT = std::numeric_limits<double>::infinity();
  /// Sweep CSV to estimate from instead of computing a sweep.
  std::optional<std::filesystem::path> input;

  std::filesystem::path out = ".";
  int workers = 1;
  std::uint64_t seed = 0;

  std::uint64_t sim_runs = 100000;
  SimInput sim_input = SimInput::Pure;
  double sim_theta = 0.0;
  double sim_chi = 0.0;
  /// Correction set label, or nullopt for the analytically best set.
  std::optional<BellState> sim_set;
  /// Control-axis value for `simulate`; unset keeps the model value.
  std::optional<double> sim_param;

  std::size_t verify_samples = 10000;

  /// Search window for `estimate`: explicit bounds, else candidate +-
  /// halfwidth, else the whole sweep range.
  SearchWindow window() const;

  ControlAxis control_axis() const noexcept;
  SweepSpec sweep_spec() const;

  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

/// Applies one `key = value` assignment. Unknown keys throw ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` text; `#` starts a comment.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// 12 significant digits, shortest form, independent of the C locale.
std::string format_number(double value);

inline constexpr std::string_view kSweepHeader =
    "param,kT,z,xx,yy,zz,qd,theta_star,sqc_x,sqc_y,sqc_z,lqc_x,lqc_y,lqc_z,"
    "lqc_x_divergent,lqc_y_divergent,lqc_z_divergent,fmax_ext,fmax_branch,dmin_int,dmin_branch";

inline constexpr std::string_view kEstimateHeader = "detector,kT,method,order,estimate,uncertainty";

inline constexpr std::string_view kExtrapolationHeader =
    "detector,method,order,points,intercept,intercept_stderr,slope";

void write_sweep_csv(std::ostream& os, const SweepResult& result);

struct SweepTable {
  /// One result per kT, ascending.
  std::vector<SweepResult> results;
  /// Detector columns present in the file.
  std::vector<Detector> columns;
};

/// Reads the sweep CSV schema back, or any CSV with `param`, `kT` and
/// detector-named columns. Throws ConfigError on malformed input.
SweepTable read_sweep_csv(std::istream& is);

/// Output file name for one temperature, e.g. sweep_kT0.05.csv.
std::string sweep_file_name(double kT);

/// Each command writes its files under config.out, logs to `log` and
/// returns an ExitCode. Exceptions other than ConfigError are reported as
/// computation errors.
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_estimate(const RunConfig& config, std::ostream& log);
int cmd_simulate(const RunConfig& config, std::ostream& log);

struct CheckResult {
  std::string group;
  std::string name;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool pass = false;
};

/// Subsets: table1, bell, oracles, symmetry, all. Throws ConfigError for an
/// unknown subset.
std::vector<CheckResult> run_checks(std::string_view subset, std::size_t samples = 10000,
                                    std::uint64_t seed = 0);

int cmd_verify(std::string_view subset, const RunConfig& config, std::ostream& report);

}  // namespace qcpd::cli
