#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nlgauge/evolution.hpp"
#include "nlgauge/gauge.hpp"

namespace nlgauge {

/// Measurable set in position space built from axis-aligned half-open boxes
/// [lo, hi) by unions, intersections and complements. Membership is decided
/// at the sample points.
class BorelBin {
 public:
  using Point = std::array<double, 3>;
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  BorelBin();  // empty set
  static BorelBin whole();
  static BorelBin box(const Point& lo, const Point& hi);
  /// lo <= x_axis < hi, unrestricted along the other axes.
  static BorelBin interval(int axis, double lo, double hi);

  BorelBin united(const BorelBin& other) const;
  BorelBin intersected(const BorelBin& other) const;
  BorelBin complement() const;

  bool contains(const Point& x) const { return member_(x); }
  RealField indicator(const Grid& grid) const;

 private:
  explicit BorelBin(std::function<bool(const Point&)> member) : member_(std::move(member)) {}
  std::function<bool(const Point&)> member_;
};

/// Orthogonal projection: multiplication by a {0,1} mask in position or
/// momentum space, or the rank-one projector onto a normalized state.
class LinearProjection {
 public:
  enum class Kind { position, spectral, rank_one };

  static LinearProjection position(const Grid& grid, const BorelBin& bin);
  static LinearProjection position_mask(RealField mask);
  /// Mask over flat spectral indices (FFTW order).
  static LinearProjection spectral(const Grid& grid, std::vector<std::uint8_t> modes);
  /// Grid modes with lo <= k_axis < hi (angular wavenumber).
  static LinearProjection momentum_band(const Grid& grid, int axis, double lo, double hi);
  static LinearProjection rank_one(const WaveFunction& phi);

  Kind kind() const { return kind_; }
  const Grid& grid() const { return grid_; }
  bool negated() const { return negated_; }

  /// I - E.
  LinearProjection negation() const;
  /// E1 E2 for two masks of the same kind (they commute).
  LinearProjection meet(const LinearProjection& other) const;

  WaveFunction apply(const WaveFunction& psi) const;
  /// ||E psi||^2 / ||psi||^2.
  double expectation(const WaveFunction& psi) const;

 private:
  LinearProjection(Kind kind, Grid grid) : kind_(kind), grid_(std::move(grid)) {}

  Kind kind_;
  Grid grid_;
  std::vector<std::uint8_t> mask_;  // position or spectral
  ComplexArray phi_;                // rank_one, unit norm
  bool negated_ = false;
};

/// E^ = N o E o N^{-1} with an invertible, norm-preserving conjugator.
class GeneralizedProjection {
 public:
  GeneralizedProjection(LinearProjection inner, GaugeTransform conjugator = {});

  const LinearProjection& inner() const { return inner_; }
  const GaugeTransform& conjugator() const { return conjugator_; }

  GeneralizedProjection negation() const;

  WaveFunction apply(const WaveFunction& psi, double t = 0.0, DensityFloor floor = {}) const;
  double expectation(const WaveFunction& psi, double t = 0.0, DensityFloor floor = {}) const;

 private:
  LinearProjection inner_;
  GaugeTransform conjugator_;
  GaugeTransform inverse_;
};

double p_B(const WaveFunction& psi, const BorelBin& bin);

WaveFunction apply_generalized(const GeneralizedProjection& E, const WaveFunction& psi,
                               double t = 0.0, DensityFloor floor = {});

/// Finite partition of the real line by increasing edges into
/// (-inf, e0), [e0, e1), ..., [e_last, inf), attached to the position or
/// momentum coordinate along one axis and conjugated by one transform.
class GeneralizedPVM {
 public:
  enum class Quantity { position, momentum };
  /// Selection of partition cells; value_set[i] != 0 selects cell i.
  using ValueSet = std::vector<std::uint8_t>;

  GeneralizedPVM(const Grid& grid, Quantity quantity, int axis, std::vector<double> edges,
                 GaugeTransform conjugator = {});

  std::size_t cells() const { return edges_.size() + 1; }
  const std::vector<double>& edges() const { return edges_; }
  ValueSet cell(std::size_t i) const;
  ValueSet all() const { return ValueSet(cells(), 1); }

  GeneralizedProjection projection(const ValueSet& B) const;

 private:
  Grid grid_;
  Quantity quantity_;
  int axis_;
  std::vector<double> edges_;
  GaugeTransform conjugator_;
  std::vector<std::size_t> cell_of_;  // cell index per flat (spectral) index
};

/// mu_psi(B) = ||E^(B) psi||^2 / ||psi||^2.
double pvm_measure(const GeneralizedPVM& M, const WaveFunction& psi,
                   const GeneralizedPVM::ValueSet& B, double t = 0.0, DensityFloor floor = {});

/// Row-by-row comparison of a linear description (psi, U_t, E, chi_B) with
/// its image under N (N[psi], N U_t N^{-1}, N E N^{-1}, chi_B).
struct EquivalenceRow {
  double t;
  std::string label;  // state, evolution, observables, position
  double deviation;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  double max_deviation(const std::string& label) const;
  double max_deviation() const;
};

struct LinearSystem {
  FieldPath potential;
  double hbar = 1.0;
  double mass = 1.0;
};

EquivalenceReport equivalence_table_check(const WaveFunction& psi, const GaugeTransform& N,
                                          const std::vector<LinearProjection>& observables,
                                          const std::vector<BorelBin>& bins,
                                          const LinearSystem& system,
                                          const EvolveOptions& options);

}  // namespace nlgauge
