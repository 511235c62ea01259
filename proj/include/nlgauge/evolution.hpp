#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlgauge/functionals.hpp"
#include "nlgauge/gauge.hpp"
#include "nlgauge/params.hpp"

namespace nlgauge {

class Spectral;

// ---------------------------------------------------------------------------
// Linear reference flow

/// One Strang step for i hbar d_t psi = (-hbar^2/2m lap + V) psi:
/// half potential phase, exact kinetic phase in spectral space, half potential.
WaveFunction step_linear(const WaveFunction& psi, const RealField& V, double dt, double hbar,
                         double mass);

/// Cached phase factors for repeated Strang steps with static V and fixed dt.
class SplitStepPropagator {
 public:
  /// `V` may be null for a free particle.
  SplitStepPropagator(const Grid& grid, const RealField* V, double dt, double hbar, double mass);
  void advance(ComplexArray& psi) const;

 private:
  std::shared_ptr<const Spectral> spectral_;
  ComplexArray half_potential_;  // empty when V is absent
  ComplexArray kinetic_;
};

// ---------------------------------------------------------------------------
// Unified nonlinear flow

/// Spectral modes kept by the 2/3 rule: |m_a| <= n_a / 3 on every axis.
std::vector<std::uint8_t> dealias_mask(const Grid& grid);

/// Time derivative of psi under the unified family. Owns scratch space, so
/// use one instance per thread.
///
/// The linear part (-i mu0 V - i nu1 lap) acts on the full state. With
/// `dealias`, the nonlinear remainder is evaluated on the 2/3-filtered state
/// and filtered again; without it, aliasing of the density products drives
/// Nyquist modes unstable wherever |grad ln rho| is large.
class UnifiedRhs {
 public:
  UnifiedRhs(const Grid& grid, UnifiedParams params, DensityFloor floor = {}, bool dealias = true);
  ~UnifiedRhs();
  UnifiedRhs(UnifiedRhs&&) noexcept;

  void operator()(const Complex* psi, double t, Complex* out);

  const UnifiedParams& params() const { return params_; }
  /// Points below the density floor in the most recent evaluation.
  std::size_t floored_points() const { return floored_points_; }

 private:
  Grid grid_;
  UnifiedParams params_;
  DensityFloor floor_;
  std::shared_ptr<const Spectral> spectral_;
  std::unique_ptr<FunctionalEvaluator> eval_;
  FunctionalEvaluator::Request request_;
  bool need_functionals_ = false;
  bool need_log_ = false;
  bool dealias_ = true;
  std::vector<std::uint8_t> dealias_mask_;
  ComplexArray hat_, lap_, filtered_, filtered_hat_, nonlinear_;
  RealArray g_, w_;
  std::size_t floored_points_ = 0;
};

ComplexArray rhs_unified(const WaveFunction& psi, const UnifiedParams& p, double t,
                         DensityFloor floor = {}, bool dealias = true);

struct StepOptions {
  double cfl = 0.2;  // dt <= cfl * dx_min^2 * m / hbar
  DensityFloor floor;
  bool dealias = true;
};

/// Largest dt admitted by the stability bound.
double max_stable_dt(const Grid& grid, const UnifiedParams& p, double cfl);

/// Classical RK4 driver with the stability check and blow-up guard.
class Rk4Integrator {
 public:
  Rk4Integrator(const Grid& grid, UnifiedParams params, StepOptions options = {});

  /// Advances psi in place. Throws std::invalid_argument if dt exceeds the
  /// stability bound and NumericalAbort if max|psi| grows more than tenfold
  /// in one step or becomes non-finite.
  void step(ComplexArray& psi, double t, double dt);

  std::size_t floored_points() const { return rhs_.floored_points(); }

 private:
  UnifiedRhs rhs_;
  StepOptions options_;
  double dt_max_;
  ComplexArray k1_, k2_, k3_, k4_, stage_;
};

WaveFunction step_nonlinear(const WaveFunction& psi, const UnifiedParams& p, double t, double dt,
                            StepOptions options = {});

// ---------------------------------------------------------------------------
// Trajectories

enum class Scheme { rk4, split_step };

struct Diagnostics {
  double norm = 0.0;
  double linear_energy = 0.0;  // <-hbar^2/2m lap + V> / ||psi||^2
  double max_abs = 0.0;
  std::size_t floored_points = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<WaveFunction> states;
  std::vector<Diagnostics> diagnostics;
};

struct EvolveOptions {
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t stride = 1;  // record every stride-th step; the final state is always recorded
  Scheme scheme = Scheme::rk4;
  StepOptions step;
  bool keep_states = true;
};

/// Called at every recorded time.
using Observer = std::function<void(double t, const WaveFunction& psi)>;

/// Number of uniform steps used for [0, t_final]: round(t_final / dt).
std::size_t step_count(double t_final, double dt);

double linear_energy(const WaveFunction& psi, const RealField* V, double hbar, double mass);

/// Integrates from t = 0. `split_step` requires the linear point.
Trajectory evolve(const WaveFunction& psi0, const UnifiedParams& p, const EvolveOptions& options,
                  const std::vector<Observer>& observers = {});

/// psi'_t = N_t[U(t) N_0^{-1}[psi'_0]] with U the split-step flow of the
/// linear system (hbar, m, V). N must be invertible and norm-preserving.
Trajectory conjugated_evolve(const WaveFunction& psi0_prime, const GaugeTransform& N,
                             const FieldPath& V, double hbar, double mass,
                             const EvolveOptions& options);

}  // namespace nlgauge
