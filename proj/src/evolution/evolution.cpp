#include "nlgauge/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlgauge/kernels.hpp"
#include "nlgauge/spectral.hpp"

namespace nlgauge {

namespace {

Complex unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

double max_abs_of(const ComplexArray& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

bool all_finite(const ComplexArray& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

std::size_t count_floored(const WaveFunction& psi, DensityFloor floor) {
  double max_rho = 0.0;
  for (const auto& z : psi.values()) max_rho = std::max(max_rho, std::norm(z));
  const double f = floor.epsilon_rel * max_rho;
  return static_cast<std::size_t>(std::count_if(
      psi.values().begin(), psi.values().end(), [&](const Complex& z) { return std::norm(z) < f; }));
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::vector<std::uint8_t> dealias_mask(const Grid& grid) {
  std::vector<std::uint8_t> mask(grid.size(), 1);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto idx = grid.unravel(k);
    for (int a = 0; a < grid.dims(); ++a) {
      const std::size_t np = grid.points(a);
      const std::size_t m = idx[a] <= np / 2 ? idx[a] : np - idx[a];
      if (3 * m > np) mask[k] = 0;
    }
  }
  return mask;
}

// ---------------------------------------------------------------------------

SplitStepPropagator::SplitStepPropagator(const Grid& grid, const RealField* V, double dt,
                                         double hbar, double mass)
    : spectral_(Spectral::for_grid(grid)) {
  const std::size_t n = grid.size();
  if (V) {
    require_same_grid(V->grid, grid, "SplitStepPropagator");
    half_potential_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      half_potential_[j] = unit_phase(-0.5 * V->values[j] * dt / hbar);
    }
  }
  kinetic_.resize(n);
  const auto& k2 = spectral_->k_squared();
  const double c = -hbar * dt / (2.0 * mass);
  for (std::size_t j = 0; j < n; ++j) kinetic_[j] = unit_phase(c * k2[j]);
}

void SplitStepPropagator::advance(ComplexArray& psi) const {
  const auto& kt = kernels::active();
  const std::size_t n = psi.size();
  if (!half_potential_.empty()) kt.cmul(psi.data(), half_potential_.data(), psi.data(), n);
  spectral_->forward(psi.data(), psi.data());
  kt.cmul(psi.data(), kinetic_.data(), psi.data(), n);
  spectral_->inverse(psi.data(), psi.data());
  if (!half_potential_.empty()) kt.cmul(psi.data(), half_potential_.data(), psi.data(), n);
}

WaveFunction step_linear(const WaveFunction& psi, const RealField& V, double dt, double hbar,
                         double mass) {
  
  SplitStepPropagator prop(psi.grid(), &V, dt, hbar, mass);
  ComplexArray v = psi.data();
  prop.advance(v);
  return WaveFunction(psi.grid(), std::move(v));
}

// ---------------------------------------------------------------------------

UnifiedRhs::UnifiedRhs(const Grid& grid, UnifiedParams params, DensityFloor floor, bool dealias)
    : grid_(grid),
      params_(std::move(params)),
      floor_(floor),
      spectral_(Spectral::for_grid(grid)),
      dealias_(dealias),
      hat_(grid.size()),
      lap_(grid.size()),
      g_(grid.size()),
      w_(grid.size()) {
  const auto& p = params_;
  if (p.has_coupling()) {
    if (static_cast<int>(p.coupling.size()) != grid.dims()) {
      throw std::invalid_argument("UnifiedRhs: coupling A needs one component per axis");
    }
    for (const auto& a : p.coupling) {
      if (a.size() != grid.size()) throw std::invalid_argument("UnifiedRhs: coupling size mismatch");
    }
    request_.current = true;
  }
  request_.r[0] = !p.mu[0].is_zero();
  request_.r[1] = !(p.mu[1] - ScalarPath(p.mu2_kinetic())).is_zero() || !p.nu2.is_zero();
  request_.r[2] = !(p.mu[2] - ScalarPath(p.mu3_kinetic())).is_zero();
  request_.r[3] = !p.mu[3].is_zero();
  request_.r[4] = !(p.mu[4] - ScalarPath(p.mu5_kinetic())).is_zero();
  need_log_ = !p.alpha1.is_zero();
  need_functionals_ = request_.current || need_log_ ||
                      std::any_of(request_.r.begin(), request_.r.end(), [](bool b) { return b; });
  if (need_functionals_) {
    eval_ = std::make_unique<FunctionalEvaluator>(grid);
    nonlinear_.resize(grid.size());
    if (dealias_) {
      filtered_.resize(grid.size());
      filtered_hat_.resize(grid.size());
      dealias_mask_ = dealias_mask(grid);
    }
  }
  if (const RealField* v = p.potential.static_field()) require_same_grid(v->grid, grid, "UnifiedRhs");
}

UnifiedRhs::~UnifiedRhs() = default;
UnifiedRhs::UnifiedRhs(UnifiedRhs&&) noexcept = default;

void UnifiedRhs::operator()(const Complex* psi, double t, Complex* out) {
  const auto& kt = kernels::active();
  const auto& p = params_;
  const std::size_t n = grid_.size();

  spectral_->forward(psi, hat_.data());
  const auto& k2 = spectral_->k_squared();
  for (std::size_t j = 0; j < n; ++j) lap_[j] = -k2[j] * hat_[j];
  spectral_->inverse(lap_.data(), lap_.data());

  // Linear part: -i mu0 V psi - i nu1 lap psi.
  std::fill(g_.begin(), g_.end(), 0.0);
  if (const RealField* v = p.potential.static_field()) {
    for (std::size_t j = 0; j < n; ++j) w_[j] = p.mu0 * v->values[j];
  } else if (!p.potential.is_zero()) {
    const RealField v = p.potential.at(t, grid_);
    for (std::size_t j = 0; j < n; ++j) w_[j] = p.mu0 * v.values[j];
  } else {
    std::fill(w_.begin(), w_.end(), 0.0);
  }
  kt.modulate(psi, g_.data(), w_.data(), out, n);
  kt.caxpy(Complex(0.0, -p.nu1), lap_.data(), out, n);

  floored_points_ = 0;
  if (!need_functionals_) return;

  // Nonlinear part, evaluated on the 2/3-filtered state and filtered again.
  const Complex* src = psi;
  const Complex* src_hat = hat_.data();
  if (dealias_) {
    for (std::size_t j = 0; j < n; ++j) filtered_hat_[j] = dealias_mask_[j] ? hat_[j] : Complex(0.0, 0.0);
    spectral_->inverse(filtered_hat_.data(), filtered_.data());
    src = filtered_.data();
    src_hat = filtered_hat_.data();
  }
  eval_->evaluate(src, src_hat, request_, floor_);
  floored_points_ = eval_->floored_points();

  std::fill(w_.begin(), w_.end(), 0.0);
  const double excess[5] = {p.mu[0](t), p.mu[1](t) - p.mu2_kinetic(),
                            p.mu[2](t) - p.mu3_kinetic(), p.mu[3](t),
                            p.mu[4](t) - p.mu5_kinetic()};
  for (int k = 0; k < 5; ++k) {
    if (!request_.r[k] || excess[k] == 0.0) continue;
    const RealArray& r = eval_->r(k + 1);
    for (std::size_t j = 0; j < n; ++j) w_[j] += excess[k] * r[j];
  }
  const double nu2 = p.nu2(t);
  if (nu2 != 0.0) {
    const RealArray& r2 = eval_->r(2);
    for (std::size_t j = 0; j < n; ++j) g_[j] = nu2 * r2[j];
  }
  const RealArray& rho = eval_->rho();
  const double f = eval_->floor_value();
  if (need_log_) {
    const double a = p.alpha1(t);
    for (std::size_t j = 0; j < n; ++j) w_[j] += a * std::log(rho[j] > f ? rho[j] : f);
  }
  if (request_.current) {
    const auto& J = eval_->current();
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < grid_.dims(); ++a) s += p.coupling[a][j] * J[a][j];
      w_[j] += s / (p.hbar * (rho[j] > f ? rho[j] : f));
    }
  }

  kt.modulate(src, g_.data(), w_.data(), nonlinear_.data(), n);
  if (dealias_) {
    spectral_->forward(nonlinear_.data(), nonlinear_.data());
    for (std::size_t j = 0; j < n; ++j) {
      if (!dealias_mask_[j]) nonlinear_[j] = Complex(0.0, 0.0);
    }
    spectral_->inverse(nonlinear_.data(), nonlinear_.data());
  }
  kt.caxpy(Complex(1.0, 0.0), nonlinear_.data(), out, n);
}

ComplexArray rhs_unified(const WaveFunction& psi, const UnifiedParams& p, double t,
                         DensityFloor floor, bool dealias) {
  UnifiedRhs rhs(psi.grid(), p, floor, dealias);
  ComplexArray out(psi.size());
  rhs(psi.data().data(), t, out.data());
  return out;
}

// ---------------------------------------------------------------------------

double max_stable_dt(const Grid& grid, const UnifiedParams& p, double cfl) {
  const double dx = grid.min_spacing();
  return cfl * dx * dx * p.mass / p.hbar;
}

Rk4Integrator::Rk4Integrator(const Grid& grid, UnifiedParams params, StepOptions options)
    : rhs_(grid, std::move(params), options.floor, options.dealias),
      options_(options),
      dt_max_(max_stable_dt(grid, rhs_.params(), options.cfl)),
      k1_(grid.size()),
      k2_(grid.size()),
      k3_(grid.size()),
      k4_(grid.size()),
      stage_(grid.size()) {
  if (!(options.cfl > 0.0)) throw std::invalid_argument("Rk4Integrator: cfl must be positive");
}

void Rk4Integrator::step(ComplexArray& psi, double t, double dt) {
  if (dt == 0.0) return;
  if (!(dt > 0.0)) throw std::invalid_argument("step_nonlinear: dt must be non-negative");
  if (dt > dt_max_) {
    std::ostringstream os;
    os << "step_nonlinear: dt = " << dt << " exceeds the stability bound " << dt_max_
       << " (cfl " << options_.cfl << " * dx^2 * m / hbar)";
    throw std::invalid_argument(os.str());
  }
  const auto& kt = kernels::active();
  const std::size_t n = psi.size();
  const double before = max_abs_of(psi);

  rhs_(psi.data(), t, k1_.data());
  kt.axpy(psi.data(), 0.5 * dt, k1_.data(), stage_.data(), n);
  rhs_(stage_.data(), t + 0.5 * dt, k2_.data());
  kt.axpy(psi.data(), 0.5 * dt, k2_.data(), stage_.data(), n);
  rhs_(stage_.data(), t + 0.5 * dt, k3_.data());
  kt.axpy(psi.data(), dt, k3_.data(), stage_.data(), n);
  rhs_(stage_.data(), t + dt, k4_.data());
  kt.rk4_combine(psi.data(), k1_.data(), k2_.data(), k3_.data(), k4_.data(), dt / 6.0,
                 stage_.data(), n);

  if (!all_finite(stage_)) {
    std::ostringstream os;
    os << "non-finite amplitude after step at t = " << t;
    throw NumericalAbort(os.str());
  }
  const double after = max_abs_of(stage_);
  if (after > 10.0 * before) {
    std::ostringstream os;
    os << "blow-up guard: max|psi| grew from " << before << " to " << after << " at t = " << t;
    throw NumericalAbort(os.str());
  }
  psi.swap(stage_);
}

WaveFunction step_nonlinear(const WaveFunction& psi, const UnifiedParams& p, double t, double dt,
                            StepOptions options) {
  Rk4Integrator integ(psi.grid(), p, options);
  ComplexArray v = psi.data();
  integ.step(v, t, dt);
  return WaveFunction(psi.grid(), std::move(v));
}

// ---------------------------------------------------------------------------

std::size_t step_count(double t_final, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be non-negative");
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

double linear_energy(const WaveFunction& psi, const RealField* V, double hbar, double mass) {
  const auto sp = Spectral::for_grid(psi.grid());
  const ComplexArray hat = spectrum(psi);
  const auto& k2 = sp->k_squared();
  double kin = 0.0;
  for (std::size_t j = 0; j < hat.size(); ++j) kin += k2[j] * std::norm(hat[j]);
  kin /= static_cast<double>(hat.size());
  double pot = 0.0, den = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double r = std::norm(psi[j]);
    den += r;
    if (V) pot += V->values[j] * r;
  }
  if (!(den > 0.0)) throw std::invalid_argument("linear_energy: zero state");
  return (hbar * hbar / (2.0 * mass) * kin + pot) / den;
}

namespace {

class Recorder {
 public:
  Recorder(const FieldPath& V, double hbar, double mass, const EvolveOptions& options,
           const std::vector<Observer>& observers)
      : V_(V), hbar_(hbar), mass_(mass), options_(options), observers_(observers) {}

  void record(double t, const WaveFunction& psi, std::size_t floored) {
    Diagnostics d;
    d.norm = norm(psi);
    d.max_abs = max_abs(psi);
    d.floored_points = floored;
    if (V_.is_zero()) {
      d.linear_energy = linear_energy(psi, nullptr, hbar_, mass_);
    } else {
      const RealField v = V_.at(t, psi.grid());
      d.linear_energy = linear_energy(psi, &v, hbar_, mass_);
    }
    traj.times.push_back(t);
    traj.diagnostics.push_back(d);
    if (options_.keep_states) traj.states.push_back(psi);
    for (const auto& obs : observers_) obs(t, psi);
  }

  bool due(std::size_t i, std::size_t steps) const {
    return i == steps || i % std::max<std::size_t>(options_.stride, 1) == 0;
  }

  Trajectory traj;

 private:
  const FieldPath& V_;
  double hbar_, mass_;
  const EvolveOptions& options_;
  const std::vector<Observer>& observers_;
};

// Linear split-step flow; `emit` receives the linear state at each recorded time.
template <class Emit>
void run_split_step(const WaveFunction& psi0, const FieldPath& V, double hbar, double mass,
                    std::size_t steps, double h, const EvolveOptions& options, Emit&& emit) {
  const Grid& grid = psi0.grid();
  ComplexArray v = psi0.data();
  std::optional<SplitStepPropagator> fixed;
  if (V.is_static() && steps > 0) fixed.emplace(grid, V.static_field(), h, hbar, mass);
  emit(0, 0.0, v);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t0 = static_cast<double>(i - 1) * h;
    if (fixed) {
      fixed->advance(v);
    } else {
      const RealField vt = V.at(t0 + 0.5 * h, grid);
      SplitStepPropagator(grid, &vt, h, hbar, mass).advance(v);
    }
    const std::size_t stride = std::max<std::size_t>(options.stride, 1);
    if (i == steps || i % stride == 0) emit(i, static_cast<double>(i) * h, v);
  }
}

}  // namespace

Trajectory evolve(const WaveFunction& psi0, const UnifiedParams& p, const EvolveOptions& options,
                  const std::vector<Observer>& observers) {
  const std::size_t steps = step_count(options.t_final, options.dt);
  const double h = steps > 0 ? options.t_final / static_cast<double>(steps) : 0.0;
  const Grid& grid = psi0.grid();
  Recorder rec(p.potential, p.hbar, p.mass, options, observers);

  if (options.scheme == Scheme::split_step) {
    if (!p.is_linear_point() || !near(p.mu0, 1.0 / p.hbar) ||
        !near(p.nu1, -p.hbar / (2.0 * p.mass))) {
      throw std::invalid_argument("evolve: split_step scheme requires the linear point");
    }
    run_split_step(psi0, p.potential, p.hbar, p.mass, steps, h, options,
                   [&](std::size_t, double t, const ComplexArray& v) {
                     const WaveFunction psi(grid, v);
                     rec.record(t, psi, count_floored(psi, options.step.floor));
                   });
    return std::move(rec.traj);
  }

  Rk4Integrator integ(grid, p, options.step);
  ComplexArray v = psi0.data();
  rec.record(0.0, psi0, count_floored(psi0, options.step.floor));
  for (std::size_t i = 1; i <= steps; ++i) {
    integ.step(v, static_cast<double>(i - 1) * h, h);
    if (rec.due(i, steps)) {
      rec.record(static_cast<double>(i) * h, WaveFunction(grid, v), integ.floored_points());
    }
  }
  return std::move(rec.traj);
}

Trajectory conjugated_evolve(const WaveFunction& psi0_prime, const GaugeTransform& N,
                             const FieldPath& V, double hbar, double mass,
                             const EvolveOptions& options) {
  if (!N.invertible() || !N.norm_preserving()) {
    throw std::invalid_argument("conjugated_evolve: N must be invertible and norm-preserving");
  }
  const std::size_t steps = step_count(options.t_final, options.dt);
  const double h = steps > 0 ? options.t_final / static_cast<double>(steps) : 0.0;
  const Grid& grid = psi0_prime.grid();
  const GaugeTransform inverse = invert(N);
  const WaveFunction psi0 = apply(inverse, psi0_prime, 0.0, options.step.floor);
  const std::vector<Observer> none;
  Recorder rec(V, hbar, mass, options, none);
  run_split_step(psi0, V, hbar, mass, steps, h, options,
                 [&](std::size_t, double t, const ComplexArray& v) {
                   const WaveFunction psi = apply(N, WaveFunction(grid, v), t, options.step.floor);
                   rec.record(t, psi, count_floored(psi, options.step.floor));
                 });
  return std::move(rec.traj);
}

}  // namespace nlgauge
