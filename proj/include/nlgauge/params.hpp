#pragma once

#include <array>
#include <string>

#include "nlgauge/paths.hpp"

namespace nlgauge {

/// Coefficients of the unified nonlinear family
///
///   d_t psi = -i [ mu0 V + sum_k mu_k R_k + alpha1 ln rho~ + A.J / (hbar rho~) ] psi
///             + (nu1 R1 + nu2 R2) psi
///
/// with the kinetic term expanded through the functionals. At the linear
/// point the right-hand side is exactly -i(-hbar/2m lap + V/hbar) psi.
struct UnifiedParams {
  double hbar = 1.0;
  double mass = 1.0;
  double mu0 = 1.0;
  double nu1 = -0.5;
  ScalarPath nu2;
  std::array<ScalarPath, 5> mu;  // mu[k-1] multiplies R_k
  ScalarPath alpha1;
  FieldPath potential;
  VectorComponents coupling;  // static A, one component per axis; empty means zero

  /// Kinetic-expansion values of (mu2, mu3, mu5) implied by nu1.
  double mu2_kinetic() const { return 0.5 * nu1; }
  double mu3_kinetic() const { return -nu1; }
  double mu5_kinetic() const { return -0.25 * nu1; }

  bool has_coupling() const { return !coupling.empty(); }
  /// True when every nonlinear excess vanishes identically in time.
  bool is_linear_point() const;
  /// One-line summary of the constant coefficients ("t" marks time-dependent ones).
  std::string describe() const;
};

UnifiedParams params_linear(double hbar, double mass, FieldPath potential = {});

/// Logarithmic nonlinearity alpha ln rho, entering as alpha / hbar.
UnifiedParams params_from_BBM(const ScalarPath& alpha, double hbar, double mass,
                              FieldPath potential = {});

/// Diffusion D with the five model parameters c_1..c_5 scaled by D'.
UnifiedParams params_from_DG(double D, double D_prime, const std::array<double, 5>& c,
                             double hbar, double mass, FieldPath potential = {});

/// Image of the linear equation under the pure gauge N_gamma. The log
/// coefficient is -gamma'/2 (it carries no 1/hbar: the phase shift
/// (gamma/2) ln rho enters the equation as a rate, not an energy).
UnifiedParams params_from_gauge(const ScalarPath& gamma, double hbar, double mass,
                                FieldPath potential = {});
/// Instantaneous coefficients for given gamma and gamma'.
UnifiedParams params_from_gauge(double gamma, double gamma_dot, double hbar, double mass,
                                FieldPath potential = {});

/// Linear equation with the current coupling A.J / rho.
UnifiedParams params_from_haag_bannier(VectorComponents A, double hbar, double mass,
                                       FieldPath potential = {});

}  // namespace nlgauge
