#pragma once

#include <optional>

#include "nlgauge/functionals.hpp"
#include "nlgauge/params.hpp"

namespace nlgauge {

/// Continuous solution c' = |c|^(delta + i gamma) exp(i lambda arg c) of the
/// multiplicative Cauchy equation.
struct CauchyPower {
  double delta = 1.0;
  double gamma = 0.0;
  int lambda = 1;
};

/// Throws for c == 0.
Complex c_prime(const CauchyPower& p, Complex c);

/// Strictly local transformation
///   N[psi] = kappa |psi|^delta exp(i (gamma ln|psi| + lambda arg psi + theta)).
/// Only delta = 1 and lambda = +-1 are invertible; other values require
/// formal mode and are rejected by `invert` and `compose`-free code paths.
class GaugeTransform {
 public:
  /// Identity.
  GaugeTransform() = default;
  GaugeTransform(double delta, ScalarPath gamma, int lambda, std::optional<RealField> kappa,
                 FieldPath theta, bool formal = false);

  /// N_gamma: psi exp(i gamma ln|psi|).
  static GaugeTransform pure(ScalarPath gamma);
  /// Complex conjugation.
  static GaugeTransform conjugation();
  static GaugeTransform local_unitary(FieldPath theta);

  double delta() const { return delta_; }
  const ScalarPath& gamma() const { return gamma_; }
  int lambda() const { return lambda_; }
  const std::optional<RealField>& kappa() const { return kappa_; }
  const FieldPath& theta() const { return theta_; }
  bool formal() const { return formal_; }

  bool invertible() const { return delta_ == 1.0 && (lambda_ == 1 || lambda_ == -1); }
  /// kappa == 1 everywhere.
  bool norm_preserving() const;
  bool is_identity() const;

 private:
  double delta_ = 1.0;
  ScalarPath gamma_;
  int lambda_ = 1;
  std::optional<RealField> kappa_;
  FieldPath theta_;
  bool formal_ = false;
};

/// N[psi] at time t. ln|psi| is evaluated on the floored modulus; points
/// with psi == 0 map to 0.
WaveFunction apply(const GaugeTransform& N, const WaveFunction& psi, double t = 0.0,
                   DensityFloor floor = {});

GaugeTransform invert(const GaugeTransform& N);

/// outer o inner, in closed form.
GaugeTransform compose(const GaugeTransform& outer, const GaugeTransform& inner);

/// Pointwise multiplication by exp(i theta).
WaveFunction apply_local_unitary(const RealField& theta, const WaveFunction& psi);

/// Coefficients p' such that N_gamma maps solutions of p to solutions of p'.
/// nu1, mu0, mu3 and V are unchanged. Requires A == 0.
UnifiedParams pushforward_params(const UnifiedParams& p, double gamma, double gamma_dot);
UnifiedParams pushforward_params(const UnifiedParams& p, const ScalarPath& gamma);

}  // namespace nlgauge
