#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlgauge/evolution.hpp"
#include "nlgauge/gauge.hpp"
#include "nlgauge/params.hpp"

namespace nlgauge::cli {

/// Schema or syntax violation. The message names the file, line and key
/// where they are known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// Validated scenario. Every key has a default; `resolved_text` is the
/// canonical INI form with all defaults filled in, and `hash` the first 16
/// hex digits of its SHA-256 with output.dir blanked.
struct ScenarioConfig {
  std::uint64_t seed = 1;

  struct GridBlock {
    int dims = 1;
    std::vector<std::size_t> points{256};
    std::vector<double> length{20.0};
  } grid;

  struct InitialBlock {
    std::string kind = "gaussian";  // gaussian, plane_wave, nodeless, file
    std::vector<double> center{0.0};
    double width = 1.0;
    std::vector<double> momentum{0.0};
    std::vector<int> modes{1};
    std::string path;
    bool apply_gauge = false;
  } initial;

  struct EquationBlock {
    std::string family = "linear";  // linear, bbm, dg, gauge, unified, haag_bannier
    double hbar = 1.0;
    double mass = 1.0;
    std::string potential = "none";  // none | harmonic <omega> | file <path>
    double alpha = 0.0;               // bbm
    double D = 0.0;                   // dg
    double D_prime = 1.0;
    std::array<double, 5> c{0, 0, 0, 0, 0};
    /// unified: mu0, nu1, nu2, mu1..mu5, alpha1 after defaults are filled in.
    std::map<std::string, double> unified;
    std::vector<double> A;  // unified, haag_bannier: constant coupling per axis
  } equation;

  struct GaugeBlock {
    std::string gamma = "0";  // <number> | sin <amplitude> <omega> | linear <a> <b>
    std::optional<double> gamma_dot;
    int lambda = 1;
    std::string theta = "0";  // <number> | linear <k> | quadratic <a> | file <path>
    std::string kappa = "1";  // <number> | file <path>
  } gauge;

  struct IntegratorBlock {
    double dt = 1e-3;
    double t_final = 1.0;
    std::string scheme = "rk4";  // rk4, split_step
    double cfl = 0.2;
    double floor = 1e-12;
    bool dealias = true;
  } integrator;

  struct OutputBlock {
    std::string dir = "out";
    std::size_t stride = 10;
    bool snapshots = false;
  } output;

  struct CheckBlock {
    double threshold = 1e-5;
    bool enforce_slope = false;
    double slope_target = 2.0;
    double slope_tolerance = 0.3;
  } check;

  struct ConvergenceBlock {
    int levels = 4;
  } convergence;

  struct MixtureBlock {
    std::string pair = "disjoint";  // disjoint, counter
    double separation = 20.0;
    double momentum = 4.0;
    double width = 1.0;
    std::string observables = "linear";  // linear, conjugated
  } mixture;

  std::string resolved_text;
  std::string hash;
  std::filesystem::path base_dir;  // relative file paths resolve against this
};

/// Parse and validate INI text. `overrides` are "section.key=value" pairs
/// applied before validation (sweep axes, command-line tweaks).
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>",
                            const std::vector<std::pair<std::string, std::string>>& overrides = {});
ScenarioConfig load_config(const std::filesystem::path& path,
                           const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Documented key list, one "section.key  default  description" line each.
std::string schema_listing();

// Builders from a validated config.
Grid build_grid(const ScenarioConfig& cfg);
FieldPath build_potential(const ScenarioConfig& cfg, const Grid& grid);
ScalarPath build_gamma(const ScenarioConfig& cfg);
GaugeTransform build_gauge(const ScenarioConfig& cfg, const Grid& grid);
UnifiedParams build_params(const ScenarioConfig& cfg, const Grid& grid);
/// Initial state; with initial.apply_gauge the configured gauge is applied at t = 0.
WaveFunction build_initial(const ScenarioConfig& cfg, const Grid& grid);
EvolveOptions build_evolve_options(const ScenarioConfig& cfg);

/// SHA-256 of `text` as lowercase hex.
std::string sha256_hex(const std::string& text);

}  // namespace nlgauge::cli
