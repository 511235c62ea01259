#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nlgauge/evolution.hpp"
#include "nlgauge/observables.hpp"

namespace nlgauge {

/// Statistical mixture sum_j w_j |psi_j><psi_j| / ||psi_j||^2.
class Ensemble {
 public:
  /// Weights must be positive and sum to 1 within 1e-12; states share a grid.
  Ensemble(std::vector<double> weights, std::vector<WaveFunction> states);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t j) const { return weights_[j]; }
  const WaveFunction& state(std::size_t j) const { return states_[j]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<WaveFunction>& states() const { return states_; }

 private:
  std::vector<double> weights_;
  std::vector<WaveFunction> states_;
};

using StateFunctional = std::function<double(const WaveFunction&)>;

/// sum_j w_j f(psi_j), accumulated in member order.
double ensemble_expectation(const Ensemble& e, const StateFunctional& f);

/// {1/2: phi1, 1/2: phi2} and {1/2: phi+, 1/2: phi-} with
/// phi+- = (phi1 +- phi2)/sqrt 2. Requires |<phi1, phi2>| <= 1e-10 and equal norms.
std::pair<Ensemble, Ensemble> equivalent_decompositions(const WaveFunction& phi1,
                                                        const WaveFunction& phi2);

Ensemble map_members(const Ensemble& e, const std::function<WaveFunction(const WaveFunction&)>& f);

/// Named observables evaluated as f(psi, t) = ||E^ psi||^2 / ||psi||^2.
struct ObservableSet {
  std::vector<std::string> ids;
  std::vector<GeneralizedProjection> projections;

  std::size_t size() const { return ids.size(); }
  void add(std::string id, GeneralizedProjection E);
};

/// Edges of the default momentum bands along axis 0 (angular wavenumber).
inline const std::vector<double> kDefaultMomentumEdges{-6.0, -2.0, 2.0, 6.0};

/// Ten equal position slabs along axis 0, five momentum bands split at
/// kDefaultMomentumEdges, and five rank-one projectors onto random packets
/// drawn from `seed`. Every projection is conjugated by `conjugator`.
ObservableSet default_observable_set(const Grid& grid, std::uint64_t seed,
                                     const GaugeTransform& conjugator = {});

/// Expectations of both ensembles for every observable at every recorded time.
struct DivergenceSeries {
  std::vector<double> times;
  std::vector<std::string> ids;
  /// [time][observable]
  std::vector<std::vector<double>> expectation_e;
  std::vector<std::vector<double>> expectation_eprime;

  /// max over observables of |<f>_e - <f>_e'| at time index i.
  double divergence(std::size_t i) const;
  double final_divergence() const { return divergence(times.size() - 1); }
};

/// Evolves every member of both ensembles under p with the given options
/// (t_final, dt, stride, scheme) and evaluates the observable set.
DivergenceSeries decomposition_divergence_series(const Ensemble& e, const Ensemble& eprime,
                                                 const UnifiedParams& p,
                                                 const ObservableSet& observables,
                                                 const EvolveOptions& options);

/// max over the observable set of |<f>_e(t) - <f>_e'(t)| at t = options.t_final.
double decomposition_divergence(const Ensemble& e, const Ensemble& eprime, const UnifiedParams& p,
                                const ObservableSet& observables, const EvolveOptions& options);

}  // namespace nlgauge
