#include <cmath>

#include "doctest.h"
#include "nlgauge/ensembles.hpp"
#include "nlgauge/random_states.hpp"
#include "oracle.hpp"

using namespace nlgauge;

namespace {

oracle::CVec to_vec(const WaveFunction& psi) {
  return oracle::CVec(psi.values().begin(), psi.values().end());
}

std::pair<WaveFunction, WaveFunction> orthonormal_pair(const Grid& g, std::uint64_t seed) {
  RandomStream rng(seed);
  const WaveFunction a = normalized(random_nodeless_state(g, rng));
  const WaveFunction b0 = random_nodeless_state(g, rng);
  const WaveFunction b = normalized(sum(b0, a, -inner(a, b0)));
  return {a, b};
}

}  // namespace

TEST_CASE("ensembles validate their weights and members") {
  const Grid g = Grid::line(16, 4.0);
  RandomStream rng(1);
  const WaveFunction a = random_nodeless_state(g, rng);
  CHECK_THROWS_AS(Ensemble({0.5, 0.6}, {a, a}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({1.5, -0.5}, {a, a}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({1.0}, {a, a}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({0.5, 0.5}, {a, random_nodeless_state(Grid::line(16, 5.0), rng)}),
                  std::invalid_argument);
  CHECK_NOTHROW(Ensemble({0.25, 0.75}, {a, a}));
  CHECK_THROWS_AS(equivalent_decompositions(a, a), std::invalid_argument);
}

TEST_CASE("equivalent decompositions share the density matrix") {
  const Grid g = Grid::line(64, 10.0);
  const double dx = g.spacing(0);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto [a, b] = orthonormal_pair(g, seed);
    const auto [e, ep] = equivalent_decompositions(a, b);
    REQUIRE(e.size() == 2);
    REQUIRE(ep.size() == 2);
    std::vector<oracle::CVec> se, sp;
    for (const auto& s : e.states()) se.push_back(to_vec(s));
    for (const auto& s : ep.states()) sp.push_back(to_vec(s));
    const auto r1 = oracle::density_matrix(e.weights(), se, dx);
    const auto r2 = oracle::density_matrix(ep.weights(), sp, dx);
    double err = 0.0;
    for (std::size_t i = 0; i < r1.size(); ++i) err = std::max(err, std::abs(r1[i] - r2[i]));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("default observable set layout") {
  const Grid g = Grid::line(64, 10.0);
  const ObservableSet set = default_observable_set(g, 3);
  REQUIRE(set.size() == 20);
  CHECK(set.ids.front() == "pos0");
  CHECK(set.ids[10] == "mom0");
  CHECK(set.ids.back() == "rank1_4");
  RandomStream rng(2);
  const WaveFunction psi = random_nodeless_state(g, rng);
  double pos = 0.0, mom = 0.0;
  for (std::size_t i = 0; i < 10; ++i) pos += set.projections[i].expectation(psi);
  for (std::size_t i = 10; i < 15; ++i) mom += set.projections[i].expectation(psi);
  CHECK(pos == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mom == doctest::Approx(1.0).epsilon(1e-13));
  const ObservableSet again = default_observable_set(g, 3);
  for (std::size_t i = 15; i < 20; ++i) {
    CHECK(set.projections[i].expectation(psi) == again.projections[i].expectation(psi));
  }
}

TEST_CASE("ensemble expectations are weighted sums") {
  const Grid g = Grid::line(32, 6.0);
  const auto [a, b] = orthonormal_pair(g, 4);
  const Ensemble e({0.3, 0.7}, {a, b});
  const StateFunctional f = [](const WaveFunction& psi) { return position_moment(psi, 0, 1); };
  CHECK(ensemble_expectation(e, f) ==
        doctest::Approx(0.3 * f(a) + 0.7 * f(b)).epsilon(1e-15));
  const Ensemble m = map_members(e, [](const WaveFunction& psi) { return scaled(psi, 2.0); });
  CHECK(m.weights() == e.weights());
  CHECK(norm(m.state(0)) == doctest::Approx(2.0));
}

TEST_CASE("linear evolution does not distinguish the decompositions") {
  const Grid g = Grid::line(64, 10.0);
  const auto [a, b] = orthonormal_pair(g, 5);
  const auto [e, ep] = equivalent_decompositions(a, b);
  EvolveOptions o;
  o.dt = 1e-2;
  o.t_final = 0.5;
  o.stride = 10;
  o.scheme = Scheme::split_step;
  const DivergenceSeries s = decomposition_divergence_series(e, ep, params_linear(1.0, 1.0),
                                                             default_observable_set(g, 1), o);
  REQUIRE(s.times.size() == 6);
  for (std::size_t i = 0; i < s.times.size(); ++i) CHECK(s.divergence(i) < 1e-12);
}

TEST_CASE("the logarithmic equation does distinguish them") {
  const Grid g = Grid::line(64, 10.0);
  const auto [a, b] = orthonormal_pair(g, 5);
  const auto [e, ep] = equivalent_decompositions(a, b);
  EvolveOptions o;
  o.dt = 1e-3;
  o.t_final = 0.2;
  o.stride = 100;
  const double d = decomposition_divergence(e, ep, params_from_BBM(1.0, 1.0, 1.0),
                                            default_observable_set(g, 1), o);
  CHECK(d > 1e-4);
}
