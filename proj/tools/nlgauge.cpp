// nlgauge: scenario runner for nonlinear Schrodinger equations generated by
// nonlinear gauge transformations.
//
// Usage:
//   nlgauge simulate     scenario.ini [--set section.key=value]... [--out DIR]
//   nlgauge gauge-check  scenario.ini [...]
//   nlgauge convergence  scenario.ini [...]
//   nlgauge mixture-demo scenario.ini [...]
//   nlgauge sweep        scenario.ini --axis section.key=v1,v2 [--axis ...] [...]
//   nlgauge schema
//
// Exit codes: 0 ok, 2 config error, 3 numerical abort, 4 threshold failure.
// NLGAUGE_WORKERS bounds the sweep thread pool.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlgauge/cli/commands.hpp"
#include "nlgauge/cli/config.hpp"

namespace {

using namespace nlgauge::cli;
using Overrides = std::vector<std::pair<std::string, std::string>>;

Overrides parse_overrides(const std::vector<std::string>& sets) {
  Overrides out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set '" + s + "': expected section.key=value");
    }
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

void print_summary(const RunReport& r, const std::string& out_dir) {
  std::cout << r.command << ": " << r.status << " (config " << r.config_hash << ", "
            << r.wall_seconds << " s) -> " << out_dir << '\n';
  for (const auto& [k, v] : r.metrics) std::cout << "  " << k << " = " << v << '\n';
  if (!r.abort_reason.empty()) std::cout << "  abort: " << r.abort_reason << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlgauge: pseudo-spectral solver for gauge-generated nonlinear Schrodinger equations"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> sets, axes;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "scenario INI file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "override a key, section.key=value (repeatable)");
    sub->add_option("--out", out_dir, "output directory (default: output.dir)");
  };
  auto* simulate = app.add_subcommand("simulate", "integrate one scenario");
  auto* gauge_check = app.add_subcommand("gauge-check", "direct vs conjugated gauge evolution");
  auto* convergence = app.add_subcommand("convergence", "dt refinement study");
  auto* mixture = app.add_subcommand("mixture-demo", "decomposition dependence of mixtures");
  auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep");
  auto* schema = app.add_subcommand("schema", "list configuration keys and defaults");
  for (auto* sub : {simulate, gauge_check, convergence, mixture, sweep}) add_common(sub);
  sweep->add_option("--axis", axes, "swept key, section.key=v1,v2,... (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (schema->parsed()) {
    std::cout << schema_listing();
    return kExitOk;
  }

  try {
    Overrides overrides = parse_overrides(sets);
    if (!out_dir.empty()) overrides.emplace_back("output.dir", out_dir);
    if (sweep->parsed()) {
      std::vector<SweepAxis> parsed;
      for (const auto& a : axes) parsed.push_back(parse_sweep_axis(a));
      const ScenarioConfig base = load_config(config_path, overrides);
      const RunReport r =
          run_sweep(config_path, overrides, parsed, base.output.dir, workers_from_env());
      print_summary(r, base.output.dir);
      return r.exit_code;
    }
    const ScenarioConfig cfg = load_config(config_path, overrides);
    RunReport r;
    if (simulate->parsed()) r = run_simulate(cfg, cfg.output.dir);
    if (gauge_check->parsed()) r = run_gauge_check(cfg, cfg.output.dir);
    if (convergence->parsed()) r = run_convergence(cfg, cfg.output.dir);
    if (mixture->parsed()) r = run_mixture_demo(cfg, cfg.output.dir);
    print_summary(r, cfg.output.dir);
    return r.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "nlgauge: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "nlgauge: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlgauge::NumericalAbort& e) {
    std::cerr << "nlgauge: numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "nlgauge: error: " << e.what() << '\n';
    return 1;
  }
}
