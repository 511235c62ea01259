#include <cmath>

#include "doctest.h"
#include "nlgauge/evolution.hpp"
#include "nlgauge/gauge.hpp"
#include "nlgauge/random_states.hpp"
#include "oracle.hpp"

using namespace nlgauge;

namespace {

WaveFunction nodeless(const Grid& g, std::uint64_t seed) {
  RandomStream rng(seed);
  return random_nodeless_state(g, rng);
}

RealField smooth_field(const Grid& g, double a, double b) {
  RealArray v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(0, i);
    v[i] = a + b * std::cos(2.0 * oracle::kPi * x / g.length(0));
  }
  return RealField(g, std::move(v));
}

double coefficient(const ScalarPath& p) { return p.constant(); }

}  // namespace

TEST_CASE("Cauchy power solves the multiplicative Cauchy equation") {
  const CauchyPower p{1.0, 0.7, -1};
  const Complex c1(0.3, -1.2), c2(-2.0, 0.5);
  const Complex lhs = c_prime(p, c1 * c2);
  const Complex rhs = c_prime(p, c1) * c_prime(p, c2);
  CHECK(std::abs(lhs - rhs) < 1e-13 * std::abs(rhs));
  CHECK(std::abs(c_prime(CauchyPower{}, c1) - c1) < 1e-15);
  CHECK_THROWS_AS(c_prime(p, 0.0), std::invalid_argument);
}

TEST_CASE("pure gauge keeps the modulus and adds gamma ln|psi| to the phase") {
  const Grid g = Grid::line(32, 6.0);
  const WaveFunction psi = nodeless(g, 1);
  const WaveFunction out = apply(GaugeTransform::pure(0.8), psi);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(out[i]) == doctest::Approx(std::abs(psi[i])).epsilon(1e-14));
    const Complex want = psi[i] * std::polar(1.0, 0.8 * std::log(std::abs(psi[i])));
    CHECK(std::abs(out[i] - want) < 1e-14);
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(GaugeTransform(2.0, 0.0, 1, std::nullopt, {}), std::invalid_argument);
  CHECK_THROWS_AS(GaugeTransform(1.0, 0.0, 2, std::nullopt, {}), std::invalid_argument);
  CHECK_NOTHROW(GaugeTransform(2.0, 0.0, 2, std::nullopt, {}, true));
  const Grid g = Grid::line(16, 1.0);
  CHECK_THROWS_AS(GaugeTransform(1.0, 0.0, 1, RealField::constant(g, -1.0), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(invert(GaugeTransform(2.0, 0.0, 1, std::nullopt, {}, true)),
                  std::invalid_argument);
  CHECK(GaugeTransform().is_identity());
  CHECK(GaugeTransform::conjugation().invertible());
  CHECK(!GaugeTransform(1.0, 0.0, 1, RealField::constant(g, 2.0), {}).norm_preserving());
}

TEST_CASE("closed-form inverse and composition agree with sequential application") {
  const Grid g = Grid::line(64, 8.0);
  const GaugeTransform N1(1.0, 0.6, -1, smooth_field(g, 1.0, 0.3), FieldPath(smooth_field(g, 0.2, 1.0)));
  const GaugeTransform N2(1.0, -1.3, 1, smooth_field(g, 0.7, 0.2), FieldPath(smooth_field(g, -0.4, 0.5)));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WaveFunction psi = nodeless(g, seed);
    const WaveFunction seq = apply(N1, apply(N2, psi));
    const WaveFunction comp = apply(compose(N1, N2), psi);
    CHECK(relative_distance(comp, seq) < 1e-12);
    CHECK(relative_distance(apply(invert(N1), apply(N1, psi)), psi) < 1e-12);
    CHECK(relative_distance(apply(N2, apply(invert(N2), psi)), psi) < 1e-12);
  }
}

TEST_CASE("time-dependent gauge parameters are evaluated at the given time") {
  const Grid g = Grid::line(32, 6.0);
  const WaveFunction psi = nodeless(g, 2);
  const GaugeTransform N = GaugeTransform::pure(ScalarPath([](double t) { return std::sin(t); }));
  CHECK(relative_distance(apply(N, psi, 0.7), apply(GaugeTransform::pure(std::sin(0.7)), psi)) <
        1e-15);
}

TEST_CASE("pushforward coefficients for gamma = 2") {
  const UnifiedParams p = params_from_gauge(2.0, 0.0, 1.0, 1.0);
  CHECK(coefficient(p.nu2) == doctest::Approx(0.5));
  CHECK(coefficient(p.mu[0]) == doctest::Approx(1.0));
  CHECK(coefficient(p.mu[3]) == doctest::Approx(-1.0));
  CHECK(coefficient(p.mu[1]) == doctest::Approx(-0.25 - 1.0));
  CHECK(coefficient(p.mu[4]) == doctest::Approx(0.125 + 0.5));
  CHECK(coefficient(p.mu[2]) == doctest::Approx(0.5));
  CHECK(coefficient(p.alpha1) == 0.0);

  const UnifiedParams q = pushforward_params(params_linear(1.0, 1.0), 2.0, 0.0);
  for (int k = 0; k < 5; ++k) CHECK(coefficient(q.mu[k]) == doctest::Approx(coefficient(p.mu[k])));
  CHECK(coefficient(q.nu2) == doctest::Approx(coefficient(p.nu2)));
}

TEST_CASE("degenerate constructors give the linear point") {
  CHECK(params_from_gauge(0.0, 0.0, 1.0, 1.0).is_linear_point());
  CHECK(params_from_DG(0.0, 0.0, {1, 2, 3, 4, 5}, 1.0, 1.0).is_linear_point());
  CHECK(params_from_DG(0.0, 1.0, {0, 0, 0, 0, 0}, 1.0, 1.0).is_linear_point());
  CHECK(params_from_BBM(0.0, 1.0, 1.0).is_linear_point());
  CHECK(!params_from_BBM(0.5, 1.0, 1.0).is_linear_point());
  CHECK(coefficient(params_from_BBM(0.5, 2.0, 1.0).alpha1) == 0.25);
}

TEST_CASE("pushforward rejects the current coupling") {
  const Grid g = Grid::line(16, 1.0);
  const UnifiedParams hb = params_from_haag_bannier({RealArray(g.size(), 0.3)}, 1.0, 1.0);
  CHECK_THROWS_AS(pushforward_params(hb, 1.0, 0.0), std::invalid_argument);
}

// Residual oracle: psi(t) is an exact free solution (the kinetic step is
// exact in spectral space), psi'(t) = N_gamma(t)[psi(t)], and d/dt psi' is
// taken by fourth-order central differences. The unified right-hand side
// with the pushed-forward coefficients must reproduce it. The initial state
// is low-band so that psi(t) stays resolved and nodeless.
TEST_CASE("gauge-transformed free solutions satisfy the pushed-forward equation") {
  const double hbar = 0.7, mass = 1.3, t0 = 0.4, h = 2e-3;
  const Grid g = Grid::line(64, 10.0);
  const RealField V = RealField::zeros(g);
  ComplexArray v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = 2.0 * oracle::kPi * g.coordinate(0, i) / g.length(0);
    v[i] = (1.0 + 0.3 * std::cos(x)) * std::polar(1.0, 0.5 * std::sin(x) + 0.2 * std::cos(2.0 * x));
  }
  const WaveFunction psi0(g, v);
  const ScalarPath gamma([](double t) { return 0.5 + std::sin(t); },
                         [](double t) { return std::cos(t); });
  const GaugeTransform N = GaugeTransform::pure(gamma);
  auto psi_prime = [&](double t) { return apply(N, step_linear(psi0, V, t, hbar, mass), t); };

  const WaveFunction p2 = psi_prime(t0 + 2 * h), p1 = psi_prime(t0 + h);
  const WaveFunction m1 = psi_prime(t0 - h), m2 = psi_prime(t0 - 2 * h);
  ComplexArray dt(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    dt[i] = (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
  }
  const UnifiedParams p = params_from_gauge(gamma, hbar, mass);
  const ComplexArray rhs = rhs_unified(psi_prime(t0), p, t0, DensityFloor(), false);
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    err = std::max(err, std::abs(rhs[i] - dt[i]));
    scale = std::max(scale, std::abs(dt[i]));
  }
  CHECK(err < 1e-9 * scale);

  // A wrong log coefficient (the 1/hbar variant) is visible to the oracle.
  UnifiedParams wrong = p;
  wrong.alpha1 = ScalarPath(1.0 / hbar) * p.alpha1;
  const ComplexArray bad = rhs_unified(psi_prime(t0), wrong, t0, DensityFloor(), false);
  double err_bad = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err_bad = std::max(err_bad, std::abs(bad[i] - dt[i]));
  CHECK(err_bad > 1e-3 * scale);
}

TEST_CASE("semidirect relation with local unitaries") {
  const Grid g = Grid::line(64, 8.0);
  const RealField theta = smooth_field(g, 0.1, 0.9);
  for (int lambda : {1, -1}) {
    const GaugeTransform N(1.0, 1.1, lambda, smooth_field(g, 1.0, 0.2), {});
    RealArray lt(theta.values);
    for (auto& x : lt) x *= lambda;
    const RealField lambda_theta(g, lt);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const WaveFunction psi = nodeless(g, seed);
      const WaveFunction lhs = apply_local_unitary(lambda_theta, apply(N, psi));
      const WaveFunction rhs = apply(N, apply_local_unitary(theta, psi));
      CHECK(relative_distance(lhs, rhs) < 1e-12);
    }
  }
}
