#include "nlgauge/params.hpp"

#include <sstream>
#include <stdexcept>

namespace nlgauge {

namespace {

void require_physical(double hbar, double mass) {
  if (!(hbar > 0.0) || !(mass > 0.0)) {
    throw std::invalid_argument("hbar and mass must be positive");
  }
}

bool is_exact(const ScalarPath& p, double value) {
  return p.is_constant() && p.constant() == value;
}

}  // namespace

bool UnifiedParams::is_linear_point() const {
  return nu2.is_zero() && mu[0].is_zero() && mu[3].is_zero() && alpha1.is_zero() &&
         !has_coupling() && is_exact(mu[1], mu2_kinetic()) && is_exact(mu[2], mu3_kinetic()) &&
         is_exact(mu[4], mu5_kinetic());
}

std::string UnifiedParams::describe() const {
  std::ostringstream os;
  os.precision(10);
  auto put = [&](const char* name, const ScalarPath& p) {
    os << ' ' << name << '=';
    if (p.is_constant()) {
      os << p.constant();
    } else {
      os << 't';
    }
  };
  os << "hbar=" << hbar << " mass=" << mass << " mu0=" << mu0 << " nu1=" << nu1;
  put("nu2", nu2);
  const char* names[] = {"mu1", "mu2", "mu3", "mu4", "mu5"};
  for (int k = 0; k < 5; ++k) put(names[k], mu[k]);
  put("alpha1", alpha1);
  os << " V=" << (potential.is_zero() ? "0" : (potential.is_static() ? "static" : "t"));
  os << " A=" << (has_coupling() ? "static" : "0");
  return os.str();
}

UnifiedParams params_linear(double hbar, double mass, FieldPath potential) {
  require_physical(hbar, mass);
  UnifiedParams p;
  p.hbar = hbar;
  p.mass = mass;
  p.mu0 = 1.0 / hbar;
  p.nu1 = -hbar / (2.0 * mass);
  p.mu[1] = p.mu2_kinetic();
  p.mu[2] = p.mu3_kinetic();
  p.mu[4] = p.mu5_kinetic();
  p.potential = std::move(potential);
  return p;
}

UnifiedParams params_from_BBM(const ScalarPath& alpha, double hbar, double mass,
                              FieldPath potential) {
  UnifiedParams p = params_linear(hbar, mass, std::move(potential));
  p.alpha1 = ScalarPath(1.0 / hbar) * alpha;
  return p;
}

UnifiedParams params_from_DG(double D, double D_prime, const std::array<double, 5>& c,
                             double hbar, double mass, FieldPath potential) {
  UnifiedParams p = params_linear(hbar, mass, std::move(potential));
  p.nu2 = 0.5 * D;
  for (int k = 0; k < 5; ++k) {
    if (D_prime * c[k] != 0.0) p.mu[k] = p.mu[k] + ScalarPath(D_prime * c[k]);
  }
  return p;
}

UnifiedParams params_from_gauge(const ScalarPath& gamma, double hbar, double mass,
                                FieldPath potential) {
  UnifiedParams p = params_linear(hbar, mass, std::move(potential));
  const double u = hbar / mass;
  const ScalarPath gamma_sq = gamma * gamma;
  p.nu2 = ScalarPath(u / 4.0) * gamma;
  p.mu[0] = ScalarPath(u / 2.0) * gamma;
  p.mu[3] = ScalarPath(-u / 2.0) * gamma;
  p.mu[1] = p.mu[1] + ScalarPath(-u / 4.0) * gamma_sq;
  p.mu[4] = p.mu[4] + ScalarPath(u / 8.0) * gamma_sq;
  if (!gamma.is_constant()) {
    const ScalarPath g = gamma;
    p.alpha1 = ScalarPath([g](double t) { return -0.5 * g.rate(t); });
  }
  return p;
}

UnifiedParams params_from_gauge(double gamma, double gamma_dot, double hbar, double mass,
                                FieldPath potential) {
  UnifiedParams p = params_from_gauge(ScalarPath(gamma), hbar, mass, std::move(potential));
  p.alpha1 = -0.5 * gamma_dot;
  return p;
}

UnifiedParams params_from_haag_bannier(VectorComponents A, double hbar, double mass,
                                       FieldPath potential) {
  UnifiedParams p = params_linear(hbar, mass, std::move(potential));
  p.coupling = std::move(A);
  return p;
}

}  // namespace nlgauge
