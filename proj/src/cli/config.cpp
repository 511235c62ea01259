#include "nlgauge/cli/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nlgauge/random_states.hpp"
#include "nlgauge/snapshot.hpp"

namespace nlgauge::cli {

namespace pt = boost::property_tree;

namespace {

struct KeySpec {
  const char* key;  // "section.name", or "name" for top-level keys
  const char* fallback;
  const char* doc;
};

// Order here is the order of the resolved file.
const KeySpec kSchema[] = {
    {"seed", "1", "global seed for every random state and observable"},
    {"grid.dims", "1", "spatial dimension, 1 to 3"},
    {"grid.points", "256", "samples per axis (one value, or one per axis)"},
    {"grid.length", "20", "box length per axis; the box is [-L/2, L/2)"},
    {"initial.kind", "gaussian", "gaussian | plane_wave | nodeless | file"},
    {"initial.center", "0", "gaussian centre per axis"},
    {"initial.width", "1", "gaussian width sigma"},
    {"initial.momentum", "0", "gaussian wavenumber per axis"},
    {"initial.modes", "1", "plane_wave mode numbers per axis"},
    {"initial.path", "", "snapshot file for kind = file"},
    {"initial.apply_gauge", "false", "map the initial state by the [gauge] transform"},
    {"equation.family", "linear", "linear | bbm | dg | gauge | unified | haag_bannier"},
    {"equation.hbar", "1", "reduced Planck constant"},
    {"equation.mass", "1", "particle mass"},
    {"equation.potential", "none", "none | harmonic <omega> | file <path>"},
    {"equation.alpha", "0", "bbm: coefficient of ln rho"},
    {"equation.D", "0", "dg: diffusion coefficient"},
    {"equation.D_prime", "1", "dg: scale of the c_j terms"},
    {"equation.c", "0 0 0 0 0", "dg: c_1 .. c_5"},
    {"equation.mu0", "1/hbar", "unified: potential coefficient"},
    {"equation.nu1", "-hbar/2m", "unified: coefficient of R1 in the real part"},
    {"equation.nu2", "0", "unified: coefficient of R2 in the real part"},
    {"equation.mu1", "0", "unified: coefficient of R1"},
    {"equation.mu2", "nu1/2", "unified: coefficient of R2"},
    {"equation.mu3", "-nu1", "unified: coefficient of R3"},
    {"equation.mu4", "0", "unified: coefficient of R4"},
    {"equation.mu5", "-nu1/4", "unified: coefficient of R5"},
    {"equation.alpha1", "0", "unified: coefficient of ln rho"},
    {"equation.A", "", "unified, haag_bannier: constant coupling per axis"},
    {"gauge.gamma", "0", "<number> | sin <amplitude> <omega> | linear <a> <b>"},
    {"gauge.gamma_dot", "", "frozen gamma rate; only with a constant gamma"},
    {"gauge.lambda", "1", "+1 or -1 (complex conjugation)"},
    {"gauge.theta", "0", "<number> | linear <k> | quadratic <a> | file <path>"},
    {"gauge.kappa", "1", "<positive number> | file <path>"},
    {"integrator.dt", "0.001", "time step"},
    {"integrator.t_final", "1", "end time"},
    {"integrator.scheme", "rk4", "rk4 | split_step (linear family only)"},
    {"integrator.cfl", "0.2", "stability factor c in dt <= c dx^2 m / hbar"},
    {"integrator.floor", "1e-12", "density floor relative to max rho"},
    {"integrator.dealias", "true", "2/3-rule filtering of the nonlinear terms"},
    {"output.dir", "out", "output directory"},
    {"output.stride", "10", "record every stride-th step"},
    {"output.snapshots", "false", "write a snapshot at every recorded time"},
    {"check.threshold", "1e-5", "gauge-check deviation threshold"},
    {"check.enforce_slope", "false", "fail gauge-check when the slope misses the target"},
    {"check.slope_target", "2", "expected order under dt halving"},
    {"check.slope_tolerance", "0.3", "allowed distance from slope_target"},
    {"convergence.levels", "4", "number of dt levels, at least 3"},
    {"mixture.pair", "disjoint", "disjoint | counter"},
    {"mixture.separation", "20", "disjoint: distance between the packets"},
    {"mixture.momentum", "4", "counter: wavenumbers +-k"},
    {"mixture.width", "1", "packet width"},
    {"mixture.observables", "linear", "linear | conjugated (by the [gauge] transform)"},
};

const std::set<std::string> kUnifiedKeys{"mu0", "nu1", "nu2", "mu1", "mu2",
                                         "mu3", "mu4", "mu5", "alpha1"};

const std::map<std::string, std::set<std::string>> kFamilyKeys{
    {"linear", {}},
    {"bbm", {"alpha"}},
    {"dg", {"D", "D_prime", "c"}},
    {"gauge", {}},
    {"unified", {"mu0", "nu1", "nu2", "mu1", "mu2", "mu3", "mu4", "mu5", "alpha1", "A"}},
    {"haag_bannier", {"A"}},
};

const std::set<std::string> kCommonEquationKeys{"family", "hbar", "mass", "potential"};

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    if constexpr (std::is_floating_point_v<T>) {
      s += fmt(v[i]);
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

class Reader {
 public:
  Reader(pt::ptree tree, std::string source, std::map<std::string, int> lines)
      : tree_(std::move(tree)), source_(std::move(source)), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (auto it = lines_.find(key); it != lines_.end()) {
      if (it->second > 0) {
        os << ':' << it->second;
      } else {
        os << " (override)";
      }
    }
    os << ": key '" << key << "': " << what;
    throw ConfigError(os.str());
  }

  bool has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto v = tree_.get_optional<std::string>(key);
    return v ? *v : fallback;
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return to_real(key, text(key, ""));
  }

  double to_real(const std::string& key, const std::string& s) const {
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "expected a finite number, got '" + s + "'");
    }
    return v;
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    const std::string s = text(key, "");
    long long v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      fail(key, "expected an integer, got '" + s + "'");
    }
    return v;
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string s = text(key, "");
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(key, "expected true or false, got '" + s + "'");
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& w : words(text(key, ""))) out.push_back(to_real(key, w));
    return out;
  }

  std::string choice(const std::string& key, const std::string& fallback,
                     std::initializer_list<const char*> allowed) const {
    const std::string s = text(key, fallback);
    for (const char* a : allowed) {
      if (s == a) return s;
    }
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    fail(key, "expected one of {" + list + "}, got '" + s + "'");
  }

 private:
  pt::ptree tree_;
  std::string source_;
  std::map<std::string, int> lines_;
};

// Line of every "key = value" entry, keyed like the schema.
std::map<std::string, int> line_map(const std::string& text) {
  std::map<std::string, int> lines;
  std::istringstream is(text);
  std::string section, line;
  for (int n = 1; std::getline(is, line); ++n) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == ';' || line[b] == '#') continue;
    if (line[b] == '[') {
      const auto e = line.find(']', b);
      section = line.substr(b + 1, e == std::string::npos ? std::string::npos : e - b - 1);
      continue;
    }
    const auto eq = line.find('=', b);
    if (eq == std::string::npos) continue;
    std::string key = line.substr(b, eq - b);
    key.erase(key.find_last_not_of(" \t") + 1);
    lines.emplace(section.empty() ? key : section + "." + key, n);
  }
  return lines;
}

bool known_key(const std::string& key) {
  for (const auto& s : kSchema) {
    if (key == s.key) return true;
  }
  return false;
}

// Per-axis list: one value broadcasts to every axis.
template <class T>
std::vector<T> per_axis(const Reader& r, const std::string& key, std::vector<T> v, int dims) {
  if (v.size() == 1 && dims > 1) v.assign(static_cast<std::size_t>(dims), v[0]);
  if (static_cast<int>(v.size()) != dims) {
    r.fail(key, "expected 1 or " + std::to_string(dims) + " values, got " +
                    std::to_string(v.size()));
  }
  return v;
}

void check_path_expr(const Reader& r, const std::string& key, const std::string& expr,
                     const std::map<std::string, std::size_t>& forms) {
  const auto w = words(expr);
  if (w.empty()) r.fail(key, "empty expression");
  if (w.size() == 1) {
    r.to_real(key, w[0]);
    return;
  }
  auto it = forms.find(w[0]);
  if (it == forms.end() || w.size() != it->second + 1) {
    r.fail(key, "cannot parse expression '" + expr + "'");
  }
  if (w[0] != "file") {
    for (std::size_t i = 1; i < w.size(); ++i) r.to_real(key, w[i]);
  }
}

std::string render(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "; nlgauge resolved configuration, schema " << kSchemaVersion << "\n";
  os << "seed = " << c.seed << "\n\n";
  os << "[grid]\n";
  os << "dims = " << c.grid.dims << "\n";
  os << "points = " << join(c.grid.points) << "\n";
  os << "length = " << join(c.grid.length) << "\n\n";
  os << "[initial]\n";
  os << "kind = " << c.initial.kind << "\n";
  os << "center = " << join(c.initial.center) << "\n";
  os << "width = " << fmt(c.initial.width) << "\n";
  os << "momentum = " << join(c.initial.momentum) << "\n";
  os << "modes = " << join(c.initial.modes) << "\n";
  if (!c.initial.path.empty()) os << "path = " << c.initial.path << "\n";
  os << "apply_gauge = " << (c.initial.apply_gauge ? "true" : "false") << "\n\n";
  const auto& e = c.equation;
  os << "[equation]\n";
  os << "family = " << e.family << "\n";
  os << "hbar = " << fmt(e.hbar) << "\n";
  os << "mass = " << fmt(e.mass) << "\n";
  os << "potential = " << e.potential << "\n";
  if (e.family == "bbm") os << "alpha = " << fmt(e.alpha) << "\n";
  if (e.family == "dg") {
    os << "D = " << fmt(e.D) << "\n";
    os << "D_prime = " << fmt(e.D_prime) << "\n";
    os << "c = " << join(std::vector<double>(e.c.begin(), e.c.end())) << "\n";
  }
  if (e.family == "unified") {
    for (const auto& s : kSchema) {
      const std::string k = s.key;
      if (k.rfind("equation.", 0) == 0 && kUnifiedKeys.count(k.substr(9))) {
        os << k.substr(9) << " = " << fmt(e.unified.at(k.substr(9))) << "\n";
      }
    }
  }
  if (!e.A.empty()) os << "A = " << join(e.A) << "\n";
  os << "\n[gauge]\n";
  os << "gamma = " << c.gauge.gamma << "\n";
  if (c.gauge.gamma_dot) os << "gamma_dot = " << fmt(*c.gauge.gamma_dot) << "\n";
  os << "lambda = " << c.gauge.lambda << "\n";
  os << "theta = " << c.gauge.theta << "\n";
  os << "kappa = " << c.gauge.kappa << "\n\n";
  const auto& in = c.integrator;
  os << "[integrator]\n";
  os << "dt = " << fmt(in.dt) << "\n";
  os << "t_final = " << fmt(in.t_final) << "\n";
  os << "scheme = " << in.scheme << "\n";
  os << "cfl = " << fmt(in.cfl) << "\n";
  os << "floor = " << fmt(in.floor) << "\n";
  os << "dealias = " << (in.dealias ? "true" : "false") << "\n\n";
  os << "[output]\n";
  os << "dir = " << c.output.dir << "\n";
  os << "stride = " << c.output.stride << "\n";
  os << "snapshots = " << (c.output.snapshots ? "true" : "false") << "\n\n";
  os << "[check]\n";
  os << "threshold = " << fmt(c.check.threshold) << "\n";
  os << "enforce_slope = " << (c.check.enforce_slope ? "true" : "false") << "\n";
  os << "slope_target = " << fmt(c.check.slope_target) << "\n";
  os << "slope_tolerance = " << fmt(c.check.slope_tolerance) << "\n\n";
  os << "[convergence]\n";
  os << "levels = " << c.convergence.levels << "\n\n";
  os << "[mixture]\n";
  os << "pair = " << c.mixture.pair << "\n";
  os << "separation = " << fmt(c.mixture.separation) << "\n";
  os << "momentum = " << fmt(c.mixture.momentum) << "\n";
  os << "width = " << fmt(c.mixture.width) << "\n";
  os << "observables = " << c.mixture.observables << "\n";
  return os.str();
}

ScenarioConfig resolve(const Reader& r, const pt::ptree& tree) {
  ScenarioConfig c;
  const ScenarioConfig d;

  // Unknown sections and keys.
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      if (!known_key(name)) r.fail(name, "unknown key");
      continue;
    }
    for (const auto& [key, leaf] : node) {
      const std::string full = name + "." + key;
      if (!leaf.empty() || !known_key(full)) r.fail(full, "unknown key");
    }
  }

  const long long seed = r.integer("seed", static_cast<long long>(d.seed));
  if (seed < 0) r.fail("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);

  c.grid.dims = static_cast<int>(r.integer("grid.dims", d.grid.dims));
  if (c.grid.dims < 1 || c.grid.dims > 3) r.fail("grid.dims", "must be 1, 2 or 3");
  {
    std::vector<std::size_t> pts;
    for (double v : r.reals("grid.points", {256.0})) {
      if (!(v >= 8.0) || v != std::floor(v)) r.fail("grid.points", "expected integers >= 8");
      pts.push_back(static_cast<std::size_t>(v));
    }
    c.grid.points = per_axis(r, "grid.points", pts, c.grid.dims);
    c.grid.length = per_axis(r, "grid.length", r.reals("grid.length", d.grid.length), c.grid.dims);
    for (double L : c.grid.length) {
      if (!(L > 0.0)) r.fail("grid.length", "lengths must be positive");
    }
  }

  auto& in = c.initial;
  in.kind = r.choice("initial.kind", d.initial.kind, {"gaussian", "plane_wave", "nodeless", "file"});
  in.center = per_axis(r, "initial.center", r.reals("initial.center", d.initial.center), c.grid.dims);
  in.width = r.real("initial.width", d.initial.width);
  if (!(in.width > 0.0)) r.fail("initial.width", "must be positive");
  in.momentum =
      per_axis(r, "initial.momentum", r.reals("initial.momentum", d.initial.momentum), c.grid.dims);
  {
    std::vector<int> modes;
    for (double v : r.reals("initial.modes", {1.0})) {
      if (v != std::floor(v)) r.fail("initial.modes", "expected integers");
      modes.push_back(static_cast<int>(v));
    }
    in.modes = per_axis(r, "initial.modes", modes, c.grid.dims);
  }
  in.path = r.text("initial.path", "");
  if (in.kind == "file" && in.path.empty()) r.fail("initial.path", "required for kind = file");
  in.apply_gauge = r.boolean("initial.apply_gauge", d.initial.apply_gauge);

  auto& e = c.equation;
  e.family = r.choice("equation.family", d.equation.family,
                      {"linear", "bbm", "dg", "gauge", "unified", "haag_bannier"});
  const auto& allowed = kFamilyKeys.at(e.family);
  if (auto eq = tree.get_child_optional("equation")) {
    for (const auto& [key, leaf] : *eq) {
      if (!kCommonEquationKeys.count(key) && !allowed.count(key)) {
        r.fail("equation." + key, "not used by family '" + e.family + "'");
      }
    }
  }
  e.hbar = r.real("equation.hbar", d.equation.hbar);
  e.mass = r.real("equation.mass", d.equation.mass);
  if (!(e.hbar > 0.0)) r.fail("equation.hbar", "must be positive");
  if (!(e.mass > 0.0)) r.fail("equation.mass", "must be positive");
  e.potential = r.text("equation.potential", d.equation.potential);
  {
    const auto w = words(e.potential);
    const bool ok = (w.size() == 1 && w[0] == "none") || (w.size() == 2 && w[0] == "file") ||
                    (w.size() == 2 && w[0] == "harmonic");
    if (!ok) r.fail("equation.potential", "expected none | harmonic <omega> | file <path>");
    if (w[0] == "harmonic") r.to_real("equation.potential", w[1]);
  }
  e.alpha = r.real("equation.alpha", d.equation.alpha);
  e.D = r.real("equation.D", d.equation.D);
  e.D_prime = r.real("equation.D_prime", d.equation.D_prime);
  if (r.has("equation.c")) {
    const auto cv = r.reals("equation.c", {});
    if (cv.size() != 5) r.fail("equation.c", "expected five values c_1 .. c_5");
    std::copy(cv.begin(), cv.end(), e.c.begin());
  }
  if (e.family == "unified") {
    const double nu1 = r.real("equation.nu1", -e.hbar / (2.0 * e.mass));
    e.unified = {
        {"mu0", r.real("equation.mu0", 1.0 / e.hbar)},
        {"nu1", nu1},
        {"nu2", r.real("equation.nu2", 0.0)},
        {"mu1", r.real("equation.mu1", 0.0)},
        {"mu2", r.real("equation.mu2", 0.5 * nu1)},
        {"mu3", r.real("equation.mu3", -nu1)},
        {"mu4", r.real("equation.mu4", 0.0)},
        {"mu5", r.real("equation.mu5", -0.25 * nu1)},
        {"alpha1", r.real("equation.alpha1", 0.0)},
    };
  }
  if (r.has("equation.A")) {
    e.A = per_axis(r, "equation.A", r.reals("equation.A", {}), c.grid.dims);
  } else if (e.family == "haag_bannier") {
    r.fail("equation.A", "required for family haag_bannier");
  }

  auto& g = c.gauge;
  g.gamma = r.text("gauge.gamma", d.gauge.gamma);
  check_path_expr(r, "gauge.gamma", g.gamma, {{"sin", 2}, {"linear", 2}});
  if (r.has("gauge.gamma_dot")) {
    if (words(g.gamma).size() != 1) {
      r.fail("gauge.gamma_dot", "only allowed with a constant gauge.gamma");
    }
    g.gamma_dot = r.real("gauge.gamma_dot", 0.0);
  }
  g.lambda = static_cast<int>(r.integer("gauge.lambda", d.gauge.lambda));
  if (g.lambda != 1 && g.lambda != -1) r.fail("gauge.lambda", "must be 1 or -1");
  g.theta = r.text("gauge.theta", d.gauge.theta);
  check_path_expr(r, "gauge.theta", g.theta, {{"linear", 1}, {"quadratic", 1}, {"file", 1}});
  g.kappa = r.text("gauge.kappa", d.gauge.kappa);
  check_path_expr(r, "gauge.kappa", g.kappa, {{"file", 1}});
  if (words(g.kappa).size() == 1 && !(r.to_real("gauge.kappa", g.kappa) > 0.0)) {
    r.fail("gauge.kappa", "must be positive");
  }

  auto& it = c.integrator;
  it.dt = r.real("integrator.dt", d.integrator.dt);
  it.t_final = r.real("integrator.t_final", d.integrator.t_final);
  if (!(it.dt > 0.0)) r.fail("integrator.dt", "must be positive");
  if (!(it.t_final >= 0.0)) r.fail("integrator.t_final", "must be non-negative");
  it.scheme = r.choice("integrator.scheme", d.integrator.scheme, {"rk4", "split_step"});
  if (it.scheme == "split_step" && e.family != "linear") {
    r.fail("integrator.scheme", "split_step requires family linear");
  }
  it.cfl = r.real("integrator.cfl", d.integrator.cfl);
  if (!(it.cfl > 0.0)) r.fail("integrator.cfl", "must be positive");
  it.floor = r.real("integrator.floor", d.integrator.floor);
  if (!(it.floor >= 0.0 && it.floor < 1.0)) r.fail("integrator.floor", "must lie in [0, 1)");
  it.dealias = r.boolean("integrator.dealias", d.integrator.dealias);

  c.output.dir = r.text("output.dir", d.output.dir);
  if (c.output.dir.empty()) r.fail("output.dir", "must not be empty");
  const long long stride = r.integer("output.stride", static_cast<long long>(d.output.stride));
  if (stride < 1) r.fail("output.stride", "must be at least 1");
  c.output.stride = static_cast<std::size_t>(stride);
  c.output.snapshots = r.boolean("output.snapshots", d.output.snapshots);

  c.check.threshold = r.real("check.threshold", d.check.threshold);
  if (!(c.check.threshold >= 0.0)) r.fail("check.threshold", "must be non-negative");
  c.check.enforce_slope = r.boolean("check.enforce_slope", d.check.enforce_slope);
  c.check.slope_target = r.real("check.slope_target", d.check.slope_target);
  c.check.slope_tolerance = r.real("check.slope_tolerance", d.check.slope_tolerance);

  c.convergence.levels = static_cast<int>(r.integer("convergence.levels", d.convergence.levels));
  if (c.convergence.levels < 3) r.fail("convergence.levels", "need at least 3 levels");

  auto& m = c.mixture;
  m.pair = r.choice("mixture.pair", d.mixture.pair, {"disjoint", "counter"});
  m.separation = r.real("mixture.separation", d.mixture.separation);
  m.momentum = r.real("mixture.momentum", d.mixture.momentum);
  m.width = r.real("mixture.width", d.mixture.width);
  if (!(m.width > 0.0)) r.fail("mixture.width", "must be positive");
  m.observables = r.choice("mixture.observables", d.mixture.observables, {"linear", "conjugated"});

  c.resolved_text = render(c);
  // The output location does not affect results, so it is left out of the hash.
  ScenarioConfig anonymous = c;
  anonymous.output.dir = "-";
  c.hash = sha256_hex(render(anonymous)).substr(0, 16);
  return c;
}

// Whitespace-separated reals, one per grid sample in flat order.
RealField load_field(const std::filesystem::path& path, const Grid& grid) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open field file " + path.string());
  RealArray v;
  v.reserve(grid.size());
  for (double x; is >> x;) v.push_back(x);
  if (!is.eof()) throw ConfigError(path.string() + ": non-numeric content");
  if (v.size() != grid.size()) {
    throw ConfigError(path.string() + ": expected " + std::to_string(grid.size()) +
                      " values, found " + std::to_string(v.size()));
  }
  return RealField(grid, std::move(v));
}

std::filesystem::path resolve_path(const ScenarioConfig& cfg, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : cfg.base_dir / path;
}

}  // namespace

std::string sha256_hex(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ScenarioConfig parse_config(const std::string& text, const std::string& source,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& err) {
    std::ostringstream os;
    os << source << ':' << err.line() << ": " << err.message();
    throw ConfigError(os.str());
  }
  auto lines = line_map(text);
  for (const auto& [key, value] : overrides) {
    if (!known_key(key)) throw ConfigError("override '" + key + "': unknown key");
    tree.put(key, value);
    lines[key] = 0;
  }
  Reader reader(tree, source, std::move(lines));
  return resolve(reader, tree);
}

ScenarioConfig load_config(const std::filesystem::path& path,
                           const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  ScenarioConfig c = parse_config(ss.str(), path.string(), overrides);
  c.base_dir = path.parent_path();
  return c;
}

std::string schema_listing() {
  std::ostringstream os;
  for (const auto& s : kSchema) {
    std::string key = s.key;
    key.resize(std::max<std::size_t>(key.size(), 24), ' ');
    std::string def = *s.fallback ? s.fallback : "(unset)";
    def.resize(std::max<std::size_t>(def.size(), 12), ' ');
    os << key << ' ' << def << ' ' << s.doc << '\n';
  }
  return os.str();
}

Grid build_grid(const ScenarioConfig& cfg) { return Grid(cfg.grid.points, cfg.grid.length); }

FieldPath build_potential(const ScenarioConfig& cfg, const Grid& grid) {
  const auto w = words(cfg.equation.potential);
  if (w[0] == "none") return {};
  if (w[0] == "file") return FieldPath(load_field(resolve_path(cfg, w[1]), grid));
  const double omega = std::stod(w[1]);
  const auto x = grid.coordinates();
  RealArray v(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dims(); ++a) r2 += x[a][i] * x[a][i];
    v[i] = 0.5 * cfg.equation.mass * omega * omega * r2;
  }
  return FieldPath(RealField(grid, std::move(v)));
}

ScalarPath build_gamma(const ScenarioConfig& cfg) {
  const auto w = words(cfg.gauge.gamma);
  if (w.size() == 1) return ScalarPath(std::stod(w[0]));
  const double a = std::stod(w[1]), b = std::stod(w[2]);
  if (w[0] == "sin") {
    return ScalarPath([a, b](double t) { return a * std::sin(b * t); },
                      [a, b](double t) { return a * b * std::cos(b * t); });
  }
  return ScalarPath([a, b](double t) { return a + b * t; }, [b](double) { return b; });
}

GaugeTransform build_gauge(const ScenarioConfig& cfg, const Grid& grid) {
  const auto& g = cfg.gauge;
  FieldPath theta;
  const auto tw = words(g.theta);
  if (tw.size() == 1) {
    const double v = std::stod(tw[0]);
    if (v != 0.0) theta = FieldPath(RealField::constant(grid, v));
  } else if (tw[0] == "file") {
    theta = FieldPath(load_field(resolve_path(cfg, tw[1]), grid));
  } else {
    const double k = std::stod(tw[1]);
    const auto x = grid.coordinates();
    RealArray v(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (int a = 0; a < grid.dims(); ++a) v[i] += tw[0] == "linear" ? k * x[a][i] : k * x[a][i] * x[a][i];
    }
    theta = FieldPath(RealField(grid, std::move(v)));
  }
  std::optional<RealField> kappa;
  const auto kw = words(g.kappa);
  if (kw.size() == 2) {
    kappa = load_field(resolve_path(cfg, kw[1]), grid);
  } else if (std::stod(kw[0]) != 1.0) {
    kappa = RealField::constant(grid, std::stod(kw[0]));
  }
  try {
    return GaugeTransform(1.0, build_gamma(cfg), g.lambda, std::move(kappa), std::move(theta));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("[gauge]: ") + err.what());
  }
}

UnifiedParams build_params(const ScenarioConfig& cfg, const Grid& grid) {
  const auto& e = cfg.equation;
  FieldPath V = build_potential(cfg, grid);
  auto coupling = [&] {
    VectorComponents A;
    for (double a : e.A) A.push_back(RealArray(grid.size(), a));
    return A;
  };
  if (e.family == "linear") return params_linear(e.hbar, e.mass, std::move(V));
  if (e.family == "bbm") return params_from_BBM(e.alpha, e.hbar, e.mass, std::move(V));
  if (e.family == "dg") return params_from_DG(e.D, e.D_prime, e.c, e.hbar, e.mass, std::move(V));
  if (e.family == "haag_bannier") {
    return params_from_haag_bannier(coupling(), e.hbar, e.mass, std::move(V));
  }
  if (e.family == "gauge") {
    if (cfg.gauge.gamma_dot) {
      return params_from_gauge(std::stod(cfg.gauge.gamma), *cfg.gauge.gamma_dot, e.hbar, e.mass,
                               std::move(V));
    }
    return params_from_gauge(build_gamma(cfg), e.hbar, e.mass, std::move(V));
  }
  UnifiedParams p = params_linear(e.hbar, e.mass, std::move(V));
  const auto& u = e.unified;
  p.mu0 = u.at("mu0");
  p.nu1 = u.at("nu1");
  p.nu2 = u.at("nu2");
  const char* names[] = {"mu1", "mu2", "mu3", "mu4", "mu5"};
  for (int k = 0; k < 5; ++k) p.mu[k] = u.at(names[k]);
  p.alpha1 = u.at("alpha1");
  p.coupling = coupling();
  return p;
}

WaveFunction build_initial(const ScenarioConfig& cfg, const Grid& grid) {
  const auto& in = cfg.initial;
  auto make = [&]() -> WaveFunction {
    try {
      if (in.kind == "gaussian") return make_gaussian(grid, in.center, in.width, in.momentum);
      if (in.kind == "plane_wave") return make_plane_wave(grid, in.modes);
      if (in.kind == "nodeless") {
        RandomStream rng(cfg.seed);
        return random_nodeless_state(grid, rng);
      }
      WaveFunction psi = load_snapshot(resolve_path(cfg, in.path));
      if (psi.grid() != grid) {
        throw ConfigError("initial.path: snapshot grid " + psi.grid().describe() +
                          " differs from [grid] " + grid.describe());
      }
      return psi;
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("[initial]: ") + err.what());
    }
  };
  WaveFunction psi = make();
  if (in.apply_gauge) psi = apply(build_gauge(cfg, grid), psi, 0.0, DensityFloor(cfg.integrator.floor));
  return psi;
}

EvolveOptions build_evolve_options(const ScenarioConfig& cfg) {
  EvolveOptions o;
  o.dt = cfg.integrator.dt;
  o.t_final = cfg.integrator.t_final;
  o.stride = cfg.output.stride;
  o.scheme = cfg.integrator.scheme == "split_step" ? Scheme::split_step : Scheme::rk4;
  o.step.cfl = cfg.integrator.cfl;
  o.step.floor = DensityFloor(cfg.integrator.floor);
  o.step.dealias = cfg.integrator.dealias;
  return o;
}

}  // namespace nlgauge::cli
