#include "nlgauge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlgauge {

namespace {

Complex int_power(Complex u, int n) {
  if (n < 0) {
    u = std::conj(u);  // |u| = 1
    n = -n;
  }
  Complex result(1.0, 0.0);
  while (n > 0) {
    if (n & 1) result *= u;
    u *= u;
    n >>= 1;
  }
  return result;
}

Complex unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

RealField log_field(const RealField& f) {
  RealField out = f;
  for (auto& v : out.values) v = std::log(v);
  return out;
}

}  // namespace

Complex c_prime(const CauchyPower& p, Complex c) {
  const double r = std::abs(c);
  if (r == 0.0) throw std::invalid_argument("c_prime: c must be nonzero");
  const double lr = std::log(r);
  return std::exp(Complex(p.delta * lr, p.gamma * lr)) * int_power(c / r, p.lambda);
}

GaugeTransform::GaugeTransform(double delta, ScalarPath gamma, int lambda,
                               std::optional<RealField> kappa, FieldPath theta, bool formal)
    : delta_(delta),
      gamma_(std::move(gamma)),
      lambda_(lambda),
      kappa_(std::move(kappa)),
      theta_(std::move(theta)),
      formal_(formal) {
  if (!std::isfinite(delta_)) throw std::invalid_argument("GaugeTransform: delta must be finite");
  if (!formal_ && !invertible()) {
    throw std::invalid_argument(
        "GaugeTransform: delta != 1 or |lambda| != 1 is not invertible; use formal mode");
  }
  if (kappa_) {
    for (double k : kappa_->values) {
      if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("GaugeTransform: kappa must be positive and finite");
      }
    }
  }
}

GaugeTransform GaugeTransform::pure(ScalarPath gamma) {
  return GaugeTransform(1.0, std::move(gamma), 1, std::nullopt, {});
}

GaugeTransform GaugeTransform::conjugation() {
  return GaugeTransform(1.0, 0.0, -1, std::nullopt, {});
}

GaugeTransform GaugeTransform::local_unitary(FieldPath theta) {
  return GaugeTransform(1.0, 0.0, 1, std::nullopt, std::move(theta));
}

bool GaugeTransform::norm_preserving() const {
  if (delta_ != 1.0) return false;
  if (!kappa_) return true;
  return std::all_of(kappa_->values.begin(), kappa_->values.end(),
                     [](double k) { return k == 1.0; });
}

bool GaugeTransform::is_identity() const {
  return delta_ == 1.0 && lambda_ == 1 && gamma_.is_zero() && theta_.is_zero() &&
         norm_preserving();
}

WaveFunction apply(const GaugeTransform& N, const WaveFunction& psi, double t,
                   DensityFloor floor) {
  const Grid& grid = psi.grid();
  const std::size_t n = psi.size();
  if (N.kappa()) require_same_grid(N.kappa()->grid, grid, "apply(kappa)");

  const double gamma = N.gamma()(t);
  std::optional<RealField> theta;
  if (!N.theta().is_zero()) theta = N.theta().at(t, grid);

  double max_rho = 0.0;
  for (const auto& z : psi.values()) max_rho = std::max(max_rho, std::norm(z));
  const double f = floor.epsilon_rel * max_rho;

  const bool fast = N.delta() == 1.0 && (N.lambda() == 1 || N.lambda() == -1);
  ComplexArray out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex z = psi[j];
    const double rho = std::norm(z);
    if (rho == 0.0) {
      out[j] = Complex(0.0, 0.0);
      continue;
    }
    double phase = theta ? theta->values[j] : 0.0;
    if (gamma != 0.0) phase += 0.5 * gamma * std::log(std::max(rho, f));
    Complex w;
    if (fast) {
      w = (N.lambda() == 1 ? z : std::conj(z)) * unit_phase(phase);
    } else {
      const double r = std::sqrt(rho);
      w = std::pow(r, N.delta()) * int_power(z / r, N.lambda()) * unit_phase(phase);
    }
    if (N.kappa()) w *= N.kappa()->values[j];
    out[j] = w;
  }
  return WaveFunction(grid, std::move(out));
}

GaugeTransform invert(const GaugeTransform& N) {
  if (!N.invertible()) throw std::invalid_argument("invert: requires delta = 1 and lambda = +-1");
  const double L = N.lambda();
  std::optional<RealField> kappa;
  FieldPath theta = ScalarPath(-L) * N.theta();
  if (N.kappa()) {
    RealField inv = *N.kappa();
    for (auto& v : inv.values) v = 1.0 / v;
    kappa = std::move(inv);
    theta = theta + ScalarPath(L) * N.gamma() * FieldPath(log_field(*N.kappa()));
  }
  return GaugeTransform(1.0, ScalarPath(-L) * N.gamma(), N.lambda(), std::move(kappa),
                        std::move(theta));
}

GaugeTransform compose(const GaugeTransform& outer, const GaugeTransform& inner) {
  const double d1 = outer.delta();
  const int L1 = outer.lambda();
  std::optional<RealField> kappa;
  if (outer.kappa() && inner.kappa()) require_same_grid(outer.kappa()->grid, inner.kappa()->grid, "compose");
  if (inner.kappa()) {
    RealField k = *inner.kappa();
    for (auto& v : k.values) v = std::pow(v, d1);
    if (outer.kappa()) {
      for (std::size_t j = 0; j < k.values.size(); ++j) k.values[j] *= outer.kappa()->values[j];
    }
    kappa = std::move(k);
  } else if (outer.kappa()) {
    kappa = outer.kappa();
  }
  FieldPath theta = outer.theta() + ScalarPath(static_cast<double>(L1)) * inner.theta();
  if (inner.kappa()) theta = theta + outer.gamma() * FieldPath(log_field(*inner.kappa()));
  const ScalarPath gamma = ScalarPath(inner.delta()) * outer.gamma() +
                           ScalarPath(static_cast<double>(L1)) * inner.gamma();
  return GaugeTransform(d1 * inner.delta(), gamma, L1 * inner.lambda(), std::move(kappa),
                        std::move(theta), outer.formal() || inner.formal());
}

WaveFunction apply_local_unitary(const RealField& theta, const WaveFunction& psi) {
  require_same_grid(theta.grid, psi.grid(), "apply_local_unitary");
  ComplexArray out(psi.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = psi[j] * unit_phase(theta.values[j]);
  return WaveFunction(psi.grid(), std::move(out));
}

UnifiedParams pushforward_params(const UnifiedParams& p, const ScalarPath& gamma) {
  if (p.has_coupling()) {
    throw std::invalid_argument("pushforward_params: the A.J coupling is not closed under N_gamma");
  }
  UnifiedParams q = p;
  const ScalarPath& g = gamma;
  q.nu2 = p.nu2 + ScalarPath(-0.5 * p.nu1) * g;
  q.mu[0] = p.mu[0] + ScalarPath(-p.nu1) * g;
  q.mu[1] = p.mu[1] - ScalarPath(0.5) * g * p.mu[0] - g * q.nu2;
  q.mu[3] = p.mu[3] - g * p.mu[2];
  q.mu[4] = p.mu[4] + ScalarPath(0.25) * g * g * p.mu[2] - ScalarPath(0.5) * g * p.mu[3];
  if (!g.is_constant()) {
    q.alpha1 = p.alpha1 + ScalarPath([g](double t) { return -0.5 * g.rate(t); });
  }
  return q;
}

UnifiedParams pushforward_params(const UnifiedParams& p, double gamma, double gamma_dot) {
  UnifiedParams q = pushforward_params(p, ScalarPath(gamma));
  q.alpha1 = p.alpha1 + ScalarPath(-0.5 * gamma_dot);
  return q;
}

}  // namespace nlgauge
