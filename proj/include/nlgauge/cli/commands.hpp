#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nlgauge/cli/config.hpp"

namespace nlgauge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitThreshold = 4,
};

/// Summary of one command run; serialized to report.json.
struct RunReport {
  std::string command;
  std::string config_hash;
  std::string status = "ok";  // ok, aborted, threshold_failure
  std::string abort_reason;
  double wall_seconds = 0.0;
  /// Final metrics in insertion order.
  std::vector<std::pair<std::string, double>> metrics;
  /// Recorded trajectory diagnostics (simulate only).
  std::vector<double> times;
  std::vector<Diagnostics> diagnostics;
  int exit_code = kExitOk;

  void metric(std::string name, double value) { metrics.emplace_back(std::move(name), value); }
  double metric(const std::string& name) const;
};

// Each command writes resolved.ini, report.json and its CSV into `out_dir`
// and returns the report. NumericalAbort is caught and recorded with exit
// code 3; ConfigError and std::invalid_argument propagate.
RunReport run_simulate(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
RunReport run_gauge_check(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
RunReport run_convergence(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
RunReport run_mixture_demo(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// One axis of a sweep: a config key and the values it takes.
struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

/// Parses "section.key=v1,v2,...".
SweepAxis parse_sweep_axis(const std::string& spec);

/// Cartesian product of the axes (last axis fastest), each point run as
/// `simulate` in out_dir/run_NNNN on `workers` threads. sweep.csv lists the
/// points in index order regardless of completion order. A failed point is
/// recorded in its row and the sweep continues.
RunReport run_sweep(const std::filesystem::path& config_path,
                    const std::vector<std::pair<std::string, std::string>>& base_overrides,
                    const std::vector<SweepAxis>& axes, const std::filesystem::path& out_dir,
                    unsigned workers);

/// Worker count from NLGAUGE_WORKERS, else the hardware concurrency.
unsigned workers_from_env();

}  // namespace nlgauge::cli
