#include "nlgauge/ensembles.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nlgauge/random_states.hpp"

namespace nlgauge {

Ensemble::Ensemble(std::vector<double> weights, std::vector<WaveFunction> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw std::invalid_argument("Ensemble: need one weight per member and at least one member");
  }
  for (double w : weights_) {
    if (!(w > 0.0 && w <= 1.0)) throw std::invalid_argument("Ensemble: weights must lie in (0, 1]");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("Ensemble: weights must sum to 1");
  for (const auto& s : states_) {
    require_same_grid(s.grid(), states_.front().grid(), "Ensemble");
    if (!(norm(s) > 0.0)) throw std::invalid_argument("Ensemble: zero member state");
  }
}

double ensemble_expectation(const Ensemble& e, const StateFunctional& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) s += e.weight(j) * f(e.state(j));
  return s;
}

std::pair<Ensemble, Ensemble> equivalent_decompositions(const WaveFunction& phi1,
                                                        const WaveFunction& phi2) {
  require_same_grid(phi1.grid(), phi2.grid(), "equivalent_decompositions");
  const double n1 = norm(phi1), n2 = norm(phi2);
  if (std::abs(n1 - n2) > 1e-10 * std::max(n1, n2)) {
    throw std::invalid_argument("equivalent_decompositions: states must have equal norms");
  }
  if (std::abs(inner(phi1, phi2)) > 1e-10 * n1 * n2) {
    throw std::invalid_argument("equivalent_decompositions: states must be orthogonal");
  }
  const double r = 1.0 / std::sqrt(2.0);
  WaveFunction plus = scaled(sum(phi1, phi2, 1.0), r);
  WaveFunction minus = scaled(sum(phi1, phi2, -1.0), r);
  return {Ensemble({0.5, 0.5}, {phi1, phi2}), Ensemble({0.5, 0.5}, {std::move(plus), std::move(minus)})};
}

Ensemble map_members(const Ensemble& e, const std::function<WaveFunction(const WaveFunction&)>& f) {
  std::vector<WaveFunction> states;
  states.reserve(e.size());
  for (const auto& s : e.states()) states.push_back(f(s));
  return Ensemble(e.weights(), std::move(states));
}

void ObservableSet::add(std::string id, GeneralizedProjection E) {
  ids.push_back(std::move(id));
  projections.push_back(std::move(E));
}

ObservableSet default_observable_set(const Grid& grid, std::uint64_t seed,
                                     const GaugeTransform& conjugator) {
  ObservableSet set;
  const double L = grid.length(0);
  constexpr int kBins = 10;
  for (int b = 0; b < kBins; ++b) {
    const double lo = -0.5 * L + L * b / kBins;
    // Open the outer slabs so every sample belongs to exactly one bin.
    const double lo_ = b == 0 ? -BorelBin::kInf : lo;
    const double hi_ = b == kBins - 1 ? BorelBin::kInf : -0.5 * L + L * (b + 1) / kBins;
    set.add("pos" + std::to_string(b),
            GeneralizedProjection(LinearProjection::position(grid, BorelBin::interval(0, lo_, hi_)),
                                  conjugator));
  }
  const auto& edges = kDefaultMomentumEdges;
  for (std::size_t b = 0; b <= edges.size(); ++b) {
    const double lo = b == 0 ? -BorelBin::kInf : edges[b - 1];
    const double hi = b == edges.size() ? BorelBin::kInf : edges[b];
    set.add("mom" + std::to_string(b),
            GeneralizedProjection(LinearProjection::momentum_band(grid, 0, lo, hi), conjugator));
  }
  RandomStream rng(seed);
  for (int r = 0; r < 5; ++r) {
    set.add("rank1_" + std::to_string(r),
            GeneralizedProjection(LinearProjection::rank_one(random_packet(grid, rng)), conjugator));
  }
  return set;
}

double DivergenceSeries::divergence(std::size_t i) const {
  double m = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    m = std::max(m, std::abs(expectation_e[i][k] - expectation_eprime[i][k]));
  }
  return m;
}

namespace {

// [time][observable] weighted expectations of an evolved ensemble.
std::vector<std::vector<double>> evolve_expectations(const Ensemble& e, const UnifiedParams& p,
                                                     const ObservableSet& obs,
                                                     EvolveOptions options,
                                                     std::vector<double>& times) {
  options.keep_states = false;
  std::vector<std::vector<double>> acc;
  for (std::size_t j = 0; j < e.size(); ++j) {
    std::size_t row = 0;
    const double w = e.weight(j);
    const Observer observer = [&](double t, const WaveFunction& psi) {
      if (j == 0) {
        times.push_back(t);
        acc.emplace_back(obs.size(), 0.0);
      }
      for (std::size_t k = 0; k < obs.size(); ++k) {
        acc[row][k] += w * obs.projections[k].expectation(psi, t, options.step.floor);
      }
      ++row;
    };
    evolve(e.state(j), p, options, {observer});
  }
  return acc;
}

}  // namespace

DivergenceSeries decomposition_divergence_series(const Ensemble& e, const Ensemble& eprime,
                                                 const UnifiedParams& p,
                                                 const ObservableSet& observables,
                                                 const EvolveOptions& options) {
  require_same_grid(e.state(0).grid(), eprime.state(0).grid(), "decomposition_divergence");
  DivergenceSeries s;
  s.ids = observables.ids;
  std::vector<double> times_prime;
  s.expectation_e = evolve_expectations(e, p, observables, options, s.times);
  s.expectation_eprime = evolve_expectations(eprime, p, observables, options, times_prime);
  return s;
}

double decomposition_divergence(const Ensemble& e, const Ensemble& eprime, const UnifiedParams& p,
                                const ObservableSet& observables, const EvolveOptions& options) {
  return decomposition_divergence_series(e, eprime, p, observables, options).final_divergence();
}

}  // namespace nlgauge
