#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcpd/cli.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> workers;
  std::optional<std::string> seed;
  std::optional<std::string> method;
  std::optional<std::string> length;
  std::vector<std::string> settings;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "key = value config file");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--workers", f.workers, "worker threads for sweeps");
  app->add_option("--seed", f.seed, "random seed (unsigned 64-bit)");
  app->add_option("--method", f.method, "forward|central|backward");
  app->add_option("--L", f.length, "chain length");
  app->add_option("--set", f.settings, "extra key=value override, repeatable");
}

// Config file first, then the dedicated flags, then --set overrides.
qcpd::cli::RunConfig build_config(const Flags& f) {
  using qcpd::cli::apply_setting;
  qcpd::cli::RunConfig c;
  if (f.config) c = qcpd::cli::load_config(*f.config);
  if (f.out) apply_setting(c, "out", *f.out);
  if (f.workers) apply_setting(c, "workers", *f.workers);
  if (f.seed) apply_setting(c, "seed", *f.seed);
  if (f.method) apply_setting(c, "method", *f.method);
  if (f.length) apply_setting(c, "L", *f.length);
  for (const std::string& s : f.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw qcpd::cli::ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum critical point detectors for spin-1/2 chains"};
  app.require_subcommand(1);

  Flags sweep_flags, estimate_flags, verify_flags, simulate_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "detectors along a parameter grid, one CSV per kT");
  CLI::App* estimate = app.add_subcommand("estimate", "critical-point estimates and T -> 0 fits");
  CLI::App* verify = app.add_subcommand("verify", "built-in checks: table1|bell|oracles|symmetry|all");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of the teleportation protocol");
  add_flags(sweep, sweep_flags);
  add_flags(estimate, estimate_flags);
  add_flags(verify, verify_flags);
  add_flags(simulate, simulate_flags);
  std::string subset = "all";
  verify->add_option("subset", subset, "check group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? qcpd::cli::kExitOk : qcpd::cli::kExitConfig;
  }

  try {
    if (*sweep) return qcpd::cli::cmd_sweep(build_config(sweep_flags), std::cerr);
    if (*estimate) return qcpd::cli::cmd_estimate(build_config(estimate_flags), std::cout);
    if (*simulate) return qcpd::cli::cmd_simulate(build_config(simulate_flags), std::cout);
    return qcpd::cli::cmd_verify(subset, build_config(verify_flags), std::cout);
  } catch (const qcpd::cli::ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return qcpd::cli::kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return qcpd::cli::kExitCompute;
  }
}
