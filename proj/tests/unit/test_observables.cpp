#include <cmath>

#include "doctest.h"
#include "nlgauge/observables.hpp"
#include "nlgauge/random_states.hpp"
#include "oracle.hpp"

using namespace nlgauge;

namespace {

WaveFunction nodeless(const Grid& g, std::uint64_t seed) {
  RandomStream rng(seed);
  return random_nodeless_state(g, rng);
}

GaugeTransform smooth_gauge(const Grid& g) {
  RealArray k(g.size()), th(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = 2.0 * oracle::kPi * g.coordinate(0, i) / g.length(0);
    k[i] = 1.0;
    th[i] = 0.4 * std::sin(x);
  }
  return GaugeTransform(1.0, 1.5, -1, RealField(g, k), FieldPath(RealField(g, th)));
}

}  // namespace

TEST_CASE("Borel bins: boxes, unions, intersections, complements") {
  const BorelBin a = BorelBin::interval(0, -1.0, 1.0);
  const BorelBin b = BorelBin::interval(0, 0.5, 2.0);
  CHECK(a.contains({-1.0, 0, 0}));
  CHECK(!a.contains({1.0, 0, 0}));
  CHECK(a.united(b).contains({1.5, 0, 0}));
  CHECK(a.intersected(b).contains({0.7, 0, 0}));
  CHECK(!a.intersected(b).contains({0.2, 0, 0}));
  CHECK(a.complement().contains({5.0, 0, 0}));
  CHECK(!BorelBin().contains({0, 0, 0}));
  CHECK(BorelBin::whole().contains({1e9, -1e9, 0}));
  const BorelBin box = BorelBin::box({0, 0, -BorelBin::kInf}, {1, 1, BorelBin::kInf});
  CHECK(box.contains({0.5, 0.5, 0}));
  CHECK(!box.contains({0.5, 1.5, 0}));

  const Grid g = Grid::line(16, 4.0);
  const RealField chi = a.indicator(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(0, i);
    CHECK(chi.values[i] == ((x >= -1.0 && x < 1.0) ? 1.0 : 0.0));
  }
}

TEST_CASE("linear projections are idempotent and self-adjoint") {
  const Grid g = Grid::line(64, 10.0);
  const WaveFunction a = nodeless(g, 1), b = nodeless(g, 2);
  RandomStream rng(3);
  const std::vector<LinearProjection> Es{
      LinearProjection::position(g, BorelBin::interval(0, -2.0, 1.5)),
      LinearProjection::momentum_band(g, 0, -3.0, 4.0),
      LinearProjection::rank_one(random_packet(g, rng)),
  };
  for (const auto& E : Es) {
    const WaveFunction Ea = E.apply(a);
    CHECK(distance(E.apply(Ea), Ea) < 1e-13 * norm(a));
    CHECK(std::abs(inner(E.apply(a), b) - inner(a, E.apply(b))) < 1e-13);
    const WaveFunction total = sum(E.apply(a), E.negation().apply(a));
    CHECK(distance(total, a) < 1e-13 * norm(a));
    CHECK(E.expectation(a) + E.negation().expectation(a) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(E.negation().negation().negated() == E.negated());
  }
}

TEST_CASE("meets of commuting masks are products") {
  const Grid g = Grid::line(64, 10.0);
  const WaveFunction psi = nodeless(g, 4);
  const auto E1 = LinearProjection::position(g, BorelBin::interval(0, -3.0, 2.0));
  const auto E2 = LinearProjection::position(g, BorelBin::interval(0, 0.0, 4.0));
  const auto both = LinearProjection::position(g, BorelBin::interval(0, 0.0, 2.0));
  CHECK(distance(E1.meet(E2).apply(psi), both.apply(psi)) < 1e-15);
  CHECK(distance(E1.meet(E2).apply(psi), E1.apply(E2.apply(psi))) < 1e-15);
  const auto M1 = LinearProjection::momentum_band(g, 0, -5.0, 5.0);
  const auto M2 = LinearProjection::momentum_band(g, 0, 0.0, 8.0);
  CHECK(distance(M1.meet(M2).apply(psi), M1.apply(M2.apply(psi))) < 1e-14);
  CHECK_THROWS_AS(E1.meet(M1), std::invalid_argument);
}

TEST_CASE("rank-one projections onto a state") {
  const Grid g = Grid::line(64, 10.0);
  const WaveFunction phi = nodeless(g, 5), psi = nodeless(g, 6);
  const auto P = LinearProjection::rank_one(phi);
  CHECK(P.expectation(phi) == doctest::Approx(1.0).epsilon(1e-14));
  const Complex c = inner(phi, psi) / norm_squared(phi);
  CHECK(distance(P.apply(psi), scaled(phi, c)) < 1e-13);
}

TEST_CASE("generalized projections are idempotent and complementary") {
  const Grid g = Grid::line(64, 10.0);
  const GaugeTransform N = smooth_gauge(g);
  const GeneralizedProjection E(LinearProjection::position(g, BorelBin::interval(0, -1.0, 3.0)), N);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const WaveFunction psi = nodeless(g, seed);
    const WaveFunction Ep = E.apply(psi);
    CHECK(relative_distance(E.apply(Ep), Ep) < 1e-12);
    CHECK(E.expectation(psi) + E.negation().expectation(psi) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("generalized PVMs: normalization, additivity, disjointness") {
  const Grid g = Grid::line(64, 10.0);
  const GaugeTransform N = smooth_gauge(g);
  for (auto q : {GeneralizedPVM::Quantity::position, GeneralizedPVM::Quantity::momentum}) {
    const GeneralizedPVM M(g, q, 0, {-2.0, 0.0, 1.5}, N);
    CHECK(M.cells() == 4);
    const WaveFunction psi = nodeless(g, 7);
    CHECK(pvm_measure(M, psi, M.all()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pvm_measure(M, psi, GeneralizedPVM::ValueSet(4, 0)) == doctest::Approx(0.0));
    double total = 0.0;
    for (std::size_t i = 0; i < M.cells(); ++i) total += pvm_measure(M, psi, M.cell(i));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    GeneralizedPVM::ValueSet B{1, 0, 1, 0};
    CHECK(pvm_measure(M, psi, B) ==
          doctest::Approx(pvm_measure(M, psi, M.cell(0)) + pvm_measure(M, psi, M.cell(2)))
              .epsilon(1e-12));
    // Disjoint cells: E(B1) E(B2) psi = 0.
    const WaveFunction cross = M.projection(M.cell(1)).apply(M.projection(M.cell(3)).apply(psi));
    CHECK(norm(cross) < 1e-12 * norm(psi));
  }
  CHECK_THROWS(GeneralizedPVM(g, GeneralizedPVM::Quantity::position, 0, {1.0, 0.0}));
}

TEST_CASE("position probabilities are invariant under the gauge") {
  const Grid g = Grid::line(64, 10.0);
  const BorelBin bin = BorelBin::interval(0, -1.0, 2.5);
  const GaugeTransform N = smooth_gauge(g);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WaveFunction psi = nodeless(g, seed);
    CHECK(p_B(apply(N, psi), bin) == doctest::Approx(p_B(psi, bin)).epsilon(1e-13));
  }
  // A kappa that is not 1 changes the density and is detected.
  RealArray k(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) k[i] = 1.0 + 0.5 * (g.coordinate(0, i) > 0.0);
  const GaugeTransform stretch(1.0, 0.0, 1, RealField(g, k), {});
  const WaveFunction psi = nodeless(g, 1);
  CHECK(std::abs(p_B(apply(stretch, psi), bin) - p_B(psi, bin)) > 1e-3);
}

TEST_CASE("equivalence table holds for a pure gauge on a nodeless state") {
  const Grid g = Grid::line(64, 10.0);
  const WaveFunction psi = nodeless(g, 9);
  const GaugeTransform N = GaugeTransform::pure(1.0);
  const std::vector<LinearProjection> obs{
      LinearProjection::position(g, BorelBin::interval(0, -1.0, 1.0)),
      LinearProjection::momentum_band(g, 0, -2.0, 2.0)};
  const std::vector<BorelBin> bins{BorelBin::interval(0, 0.0, 3.0)};
  EvolveOptions o;
  o.dt = 1e-2;
  o.t_final = 0.2;
  o.stride = 5;
  o.scheme = Scheme::split_step;
  const EquivalenceReport rep = equivalence_table_check(psi, N, obs, bins, LinearSystem{}, o);
  CHECK(!rep.rows.empty());
  CHECK(rep.max_deviation() < 1e-12);
  for (const char* label : {"state", "evolution", "observables", "position"}) {
    CHECK(rep.max_deviation(label) < 1e-12);
  }
}
