#include "nlgauge/cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "nlgauge/ensembles.hpp"
#include "nlgauge/observables.hpp"
#include "nlgauge/snapshot.hpp"
#include "output.hpp"

namespace nlgauge::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void prepare(const fs::path& out_dir, const ScenarioConfig& cfg, RunReport& r,
             const char* command) {
  fs::create_directories(out_dir);
  write_resolved(out_dir, cfg);
  r.command = command;
  r.config_hash = cfg.hash;
}

void record_abort(RunReport& r, const NumericalAbort& err) {
  r.status = "aborted";
  r.abort_reason = err.what();
  r.exit_code = kExitNumerical;
}

void finish(const fs::path& out_dir, RunReport& r, Clock::time_point start) {
  r.wall_seconds = seconds_since(start);
  write_report(out_dir / "report.json", r);
}

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%05zu.gfld", index);
  return buf;
}

double slope_of(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse / fine);
}

// Ten slabs along axis 0 matching the position observables of the default set.
std::vector<BorelBin> default_bins(const Grid& grid) {
  std::vector<BorelBin> bins;
  const double L = grid.length(0);
  for (int b = 0; b < 10; ++b) {
    const double lo = b == 0 ? -BorelBin::kInf : -0.5 * L + L * b / 10;
    const double hi = b == 9 ? BorelBin::kInf : -0.5 * L + L * (b + 1) / 10;
    bins.push_back(BorelBin::interval(0, lo, hi));
  }
  return bins;
}

void require_pure_gauge(const ScenarioConfig& cfg) {
  if (cfg.equation.family != "gauge") {
    throw ConfigError("gauge-check: equation.family must be gauge");
  }
  if (cfg.gauge.lambda != 1 || cfg.gauge.theta != "0" || cfg.gauge.kappa != "1") {
    throw ConfigError("gauge-check: only pure gauges (lambda = 1, theta = 0, kappa = 1) have a "
                      "closed-form nonlinear equation");
  }
  if (cfg.gauge.gamma_dot) {
    throw ConfigError("gauge-check: gauge.gamma_dot freezes the rate and breaks the equivalence");
  }
}

}  // namespace

RunReport run_simulate(const ScenarioConfig& cfg, const fs::path& out_dir) {
  const auto start = Clock::now();
  RunReport r;
  prepare(out_dir, cfg, r, "simulate");
  const Grid grid = build_grid(cfg);
  const UnifiedParams params = build_params(cfg, grid);
  const WaveFunction psi0 = build_initial(cfg, grid);
  EvolveOptions options = build_evolve_options(cfg);
  options.keep_states = false;
  const RealField* V = params.potential.static_field();
  RealField V_t = RealField::zeros(grid);

  CsvWriter csv(out_dir / "diagnostics.csv", cfg.hash,
                {"t", "norm", "norm_drift", "linear_energy", "max_abs"});
  const double norm0 = norm(psi0);
  double max_drift = 0.0;
  std::size_t snap = 0;
  const Observer observer = [&](double t, const WaveFunction& psi) {
    if (!params.potential.is_static()) V_t = params.potential.at(t, grid);
    Diagnostics d;
    d.norm = norm(psi);
    d.linear_energy =
        linear_energy(psi, params.potential.is_static() ? V : &V_t, params.hbar, params.mass);
    d.max_abs = max_abs(psi);
    max_drift = std::max(max_drift, std::abs(d.norm - norm0));
    csv.cell(t).cell(d.norm).cell(d.norm - norm0).cell(d.linear_energy).cell(d.max_abs).end_row();
    r.times.push_back(t);
    r.diagnostics.push_back(d);
    if (cfg.output.snapshots) save_snapshot(out_dir / snapshot_name(snap++), psi);
  };

  try {
    Trajectory traj = evolve(psi0, params, options, {observer});
    (void)traj;
    r.metric("steps", static_cast<double>(step_count(options.t_final, options.dt)));
  } catch (const NumericalAbort& err) {
    record_abort(r, err);
  }
  if (!r.diagnostics.empty()) {
    const auto& last = r.diagnostics.back();
    r.metric("t_last", r.times.back());
    r.metric("final_norm", last.norm);
    r.metric("max_norm_drift", max_drift);
    r.metric("final_linear_energy", last.linear_energy);
    r.metric("final_max_abs", last.max_abs);
  }
  finish(out_dir, r, start);
  return r;
}

RunReport run_gauge_check(const ScenarioConfig& cfg, const fs::path& out_dir) {
  require_pure_gauge(cfg);
  const auto start = Clock::now();
  RunReport r;
  prepare(out_dir, cfg, r, "gauge-check");
  const Grid grid = build_grid(cfg);
  const UnifiedParams params = build_params(cfg, grid);
  const GaugeTransform N = build_gauge(cfg, grid);
  const FieldPath V = build_potential(cfg, grid);
  const WaveFunction psi_prime0 = build_initial(cfg, grid);
  const EvolveOptions base = build_evolve_options(cfg);
  const double hbar = cfg.equation.hbar, mass = cfg.equation.mass;

  // Relative L2 distance between direct integration of the gauge equation
  // and the conjugated linear flow, at every recorded time. The direct run
  // uses RK4 unless gamma vanishes identically, where the equation is the
  // linear one and gets the same split-step flow.
  const Scheme direct_scheme = params.is_linear_point() ? Scheme::split_step : Scheme::rk4;
  auto deviations = [&](double dt) {
    EvolveOptions o = base;
    o.dt = dt;
    o.scheme = direct_scheme;
    o.stride = base.stride * static_cast<std::size_t>(std::llround(base.dt / dt));
    const Trajectory direct = evolve(psi_prime0, params, o);
    o.scheme = Scheme::split_step;
    const Trajectory conj = conjugated_evolve(psi_prime0, N, V, hbar, mass, o);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < direct.times.size(); ++i) {
      out.emplace_back(direct.times[i], relative_distance(direct.states[i], conj.states[i]));
    }
    return out;
  };

  CsvWriter csv(out_dir / "equivalence.csv", cfg.hash, {"t", "row_label", "deviation"});
  try {
    EvolveOptions lin = base;
    lin.scheme = Scheme::split_step;
    const ObservableSet obs = default_observable_set(grid, cfg.seed);
    std::vector<LinearProjection> linear_obs;
    for (const auto& E : obs.projections) linear_obs.push_back(E.inner());
    const WaveFunction psi0 = apply(invert(N), psi_prime0, 0.0, base.step.floor);
    const EquivalenceReport table = equivalence_table_check(psi0, N, linear_obs, default_bins(grid),
                                                            LinearSystem{V, hbar, mass}, lin);
    for (const auto& row : table.rows) csv.cell(row.t).cell(row.label).cell(row.deviation).end_row();

    const auto coarse = deviations(base.dt);
    double max_coarse = 0.0;
    for (const auto& [t, d] : coarse) {
      csv.cell(t).cell(std::string("direct")).cell(d).end_row();
      max_coarse = std::max(max_coarse, d);
    }
    double max_fine = 0.0;
    for (const auto& [t, d] : deviations(0.5 * base.dt)) max_fine = std::max(max_fine, d);
    const double slope = slope_of(max_coarse, max_fine);

    r.metric("max_deviation", max_coarse);
    r.metric("max_deviation_half_dt", max_fine);
    r.metric("slope", slope);
    for (const char* label : {"state", "evolution", "observables", "position"}) {
      r.metric(std::string("table_") + label, table.max_deviation(label));
    }
    const bool dev_ok = max_coarse <= cfg.check.threshold &&
                        table.max_deviation() <= cfg.check.threshold;
    const bool slope_ok = !cfg.check.enforce_slope ||
                          std::abs(slope - cfg.check.slope_target) <= cfg.check.slope_tolerance;
    if (!dev_ok || !slope_ok) {
      r.status = "threshold_failure";
      r.exit_code = kExitThreshold;
    }
  } catch (const NumericalAbort& err) {
    record_abort(r, err);
  }
  finish(out_dir, r, start);
  return r;
}

RunReport run_convergence(const ScenarioConfig& cfg, const fs::path& out_dir) {
  if (cfg.convergence.levels < 3) throw ConfigError("convergence: need at least 3 levels");
  const auto start = Clock::now();
  RunReport r;
  prepare(out_dir, cfg, r, "convergence");
  const Grid grid = build_grid(cfg);
  const UnifiedParams params = build_params(cfg, grid);
  const WaveFunction psi0 = build_initial(cfg, grid);
  const EvolveOptions base = build_evolve_options(cfg);
  const int levels = cfg.convergence.levels;

  try {
    std::vector<double> dts;
    std::vector<WaveFunction> finals;
    for (int k = 0; k < levels; ++k) {
      EvolveOptions o = base;
      o.dt = base.dt / std::ldexp(1.0, k);
      o.stride = std::numeric_limits<std::size_t>::max();
      dts.push_back(o.dt);
      finals.push_back(evolve(psi0, params, o).states.back());
    }
    // Error against the finest level; order from successive differences,
    // which does not inherit the reference's own error.
    CsvWriter csv(out_dir / "convergence.csv", cfg.hash, {"level", "dt", "error", "order"});
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    double last_order = nan;
    for (int k = 0; k < levels; ++k) {
      const double err = relative_distance(finals[k], finals.back());
      double order = nan;
      if (k + 2 < levels) {
        order = slope_of(distance(finals[k], finals[k + 1]), distance(finals[k + 1], finals[k + 2]));
        last_order = order;
      }
      csv.cell(static_cast<std::size_t>(k)).cell(dts[k]).cell(err).cell(order).end_row();
      r.metric("error_" + std::to_string(k), err);
    }
    r.metric("observed_order", last_order);
  } catch (const NumericalAbort& err) {
    record_abort(r, err);
  }
  finish(out_dir, r, start);
  return r;
}

RunReport run_mixture_demo(const ScenarioConfig& cfg, const fs::path& out_dir) {
  const auto start = Clock::now();
  RunReport r;
  prepare(out_dir, cfg, r, "mixture-demo");
  const Grid grid = build_grid(cfg);
  const UnifiedParams params = build_params(cfg, grid);
  const auto& m = cfg.mixture;

  std::vector<double> c1(grid.dims(), 0.0), c2(grid.dims(), 0.0);
  std::vector<double> k1(grid.dims(), 0.0), k2(grid.dims(), 0.0);
  if (m.pair == "disjoint") {
    c1[0] = -0.5 * m.separation;
    c2[0] = 0.5 * m.separation;
  } else {
    k1[0] = m.momentum;
    k2[0] = -m.momentum;
  }
  std::optional<std::pair<Ensemble, Ensemble>> pair;
  try {
    pair.emplace(equivalent_decompositions(make_gaussian(grid, c1, m.width, k1),
                                           make_gaussian(grid, c2, m.width, k2)));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("[mixture]: ") + err.what());
  }
  auto [e, eprime] = std::move(*pair);
  const GaugeTransform N = build_gauge(cfg, grid);
  if (cfg.initial.apply_gauge) {
    const DensityFloor floor(cfg.integrator.floor);
    auto map = [&](const WaveFunction& psi) { return apply(N, psi, 0.0, floor); };
    e = map_members(e, map);
    eprime = map_members(eprime, map);
  }
  const ObservableSet obs =
      default_observable_set(grid, cfg.seed, m.observables == "conjugated" ? N : GaugeTransform{});

  try {
    const DivergenceSeries s =
        decomposition_divergence_series(e, eprime, params, obs, build_evolve_options(cfg));
    CsvWriter csv(out_dir / "mixture.csv", cfg.hash,
                  {"t", "observable_id", "expectation_e", "expectation_eprime", "abs_diff"});
    double max_div = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      for (std::size_t k = 0; k < s.ids.size(); ++k) {
        const double a = s.expectation_e[i][k], b = s.expectation_eprime[i][k];
        csv.cell(s.times[i]).cell(s.ids[k]).cell(a).cell(b).cell(std::abs(a - b)).end_row();
      }
      max_div = std::max(max_div, s.divergence(i));
    }
    r.metric("final_divergence", s.final_divergence());
    r.metric("max_divergence", max_div);
  } catch (const NumericalAbort& err) {
    record_abort(r, err);
  }
  finish(out_dir, r, start);
  return r;
}

SweepAxis parse_sweep_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ConfigError("sweep axis '" + spec + "': expected section.key=v1,v2,...");
  }
  SweepAxis axis{spec.substr(0, eq), {}};
  std::istringstream is(spec.substr(eq + 1));
  for (std::string v; std::getline(is, v, ',');) {
    if (v.empty()) throw ConfigError("sweep axis '" + spec + "': empty value");
    axis.values.push_back(v);
  }
  return axis;
}

unsigned workers_from_env() {
  if (const char* s = std::getenv("NLGAUGE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 1) {
      throw ConfigError(std::string("NLGAUGE_WORKERS: expected a positive integer, got '") + s +
                        "'");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunReport run_sweep(const fs::path& config_path,
                    const std::vector<std::pair<std::string, std::string>>& base_overrides,
                    const std::vector<SweepAxis>& axes, const fs::path& out_dir,
                    unsigned workers) {
  const auto start = Clock::now();
  const ScenarioConfig base = load_config(config_path, base_overrides);
  std::string signature = base.hash;
  std::size_t points = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ConfigError("sweep axis '" + a.key + "' has no values");
    signature += "\n; sweep " + a.key + " =";
    for (const auto& v : a.values) signature += " " + v;
    points *= a.values.size();
  }
  RunReport r;
  r.command = "sweep";
  r.config_hash = sha256_hex(signature).substr(0, 16);
  fs::create_directories(out_dir);
  write_resolved(out_dir, base);

  struct Row {
    std::vector<std::string> values;
    std::string status, message, hash;
    int exit_code = kExitOk;
    RunReport report;
  };
  std::vector<Row> rows(points);
  for (std::size_t i = 0; i < points; ++i) {
    std::size_t rem = i;
    rows[i].values.resize(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      rows[i].values[a] = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
    }
  }

  auto run_point = [&](std::size_t i) {
    Row& row = rows[i];
    auto overrides = base_overrides;
    for (std::size_t a = 0; a < axes.size(); ++a) overrides.emplace_back(axes[a].key, row.values[a]);
    char dir[32];
    std::snprintf(dir, sizeof dir, "run_%04zu", i);
    try {
      const ScenarioConfig cfg = load_config(config_path, overrides);
      row.hash = cfg.hash;
      row.report = run_simulate(cfg, out_dir / dir);
      row.exit_code = row.report.exit_code;
      row.status = row.report.status;
      row.message = row.report.abort_reason;
    } catch (const ConfigError& err) {
      row.status = "config_error";
      row.exit_code = kExitConfig;
      row.message = err.what();
    } catch (const std::invalid_argument& err) {
      row.status = "config_error";
      row.exit_code = kExitConfig;
      row.message = err.what();
    } catch (const std::exception& err) {
      row.status = "error";
      row.exit_code = 1;
      row.message = err.what();
    }
  };

  // Bounded pool: each worker claims the next unclaimed index and owns that
  // run's state and output directory exclusively.
  std::atomic<std::size_t> next{0};
  const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < points;) run_point(i);
    });
  }
  for (auto& t : pool) t.join();

  // Single collector, index order.
  std::vector<std::string> columns{"index"};
  for (const auto& a : axes) columns.push_back(a.key);
  for (const char* c : {"status", "exit_code", "config_hash", "t_last", "final_norm",
                        "max_norm_drift", "final_linear_energy", "final_max_abs", "message"}) {
    columns.push_back(c);
  }
  CsvWriter csv(out_dir / "sweep.csv", r.config_hash, columns);
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t failed = 0;
  double worst_drift = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const Row& row = rows[i];
    csv.cell(i);
    for (const auto& v : row.values) csv.cell(v);
    csv.cell(row.status).cell(std::to_string(row.exit_code)).cell(row.hash);
    for (const char* m : {"t_last", "final_norm", "max_norm_drift", "final_linear_energy",
                          "final_max_abs"}) {
      double v = nan;
      for (const auto& [k, x] : row.report.metrics) {
        if (k == m) v = x;
      }
      csv.cell(v);
    }
    // Messages may contain commas or quotes; quote them per RFC 4180.
    std::string msg = "\"";
    for (char ch : row.message) msg += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    csv.cell(msg + "\"");
    csv.end_row();
    if (row.exit_code != kExitOk) {
      ++failed;
      if (r.exit_code == kExitOk) r.exit_code = row.exit_code;
    }
    for (const auto& [k, x] : row.report.metrics) {
      if (k == "max_norm_drift") worst_drift = std::max(worst_drift, x);
    }
  }
  r.metric("points", static_cast<double>(points));
  r.metric("failed", static_cast<double>(failed));
  r.metric("max_norm_drift", worst_drift);
  if (failed) r.status = "partial_failure";
  r.wall_seconds = seconds_since(start);
  write_report(out_dir / "report.json", r);
  return r;
}

}  // namespace nlgauge::cli
