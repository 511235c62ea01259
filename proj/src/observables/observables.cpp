#include "nlgauge/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlgauge/spectral.hpp"

namespace nlgauge {

// ---------------------------------------------------------------------------
// BorelBin

BorelBin::BorelBin() : member_([](const Point&) { return false; }) {}

BorelBin BorelBin::whole() {
  return BorelBin([](const Point&) { return true; });
}

BorelBin BorelBin::box(const Point& lo, const Point& hi) {
  return BorelBin([lo, hi](const Point& x) {
    for (int a = 0; a < 3; ++a) {
      if (!(x[a] >= lo[a] && x[a] < hi[a])) return false;
    }
    return true;
  });
}

BorelBin BorelBin::interval(int axis, double lo, double hi) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("BorelBin: axis out of range");
  return BorelBin([axis, lo, hi](const Point& x) { return x[axis] >= lo && x[axis] < hi; });
}

BorelBin BorelBin::united(const BorelBin& other) const {
  return BorelBin([a = member_, b = other.member_](const Point& x) { return a(x) || b(x); });
}

BorelBin BorelBin::intersected(const BorelBin& other) const {
  return BorelBin([a = member_, b = other.member_](const Point& x) { return a(x) && b(x); });
}

BorelBin BorelBin::complement() const {
  return BorelBin([a = member_](const Point& x) { return !a(x); });
}

RealField BorelBin::indicator(const Grid& grid) const {
  RealArray v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto idx = grid.unravel(k);
    Point x{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dims(); ++a) x[a] = grid.coordinate(a, idx[a]);
    v[k] = member_(x) ? 1.0 : 0.0;
  }
  return RealField(grid, std::move(v));
}

double p_B(const WaveFunction& psi, const BorelBin& bin) {
  const RealField chi = bin.indicator(psi.grid());
  double in = 0.0, all = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double r = std::norm(psi[k]);
    all += r;
    if (chi.values[k] != 0.0) in += r;
  }
  if (!(all > 0.0)) throw std::invalid_argument("p_B: zero state");
  return in / all;
}

// ---------------------------------------------------------------------------
// LinearProjection

LinearProjection LinearProjection::position(const Grid& grid, const BorelBin& bin) {
  return position_mask(bin.indicator(grid));
}

LinearProjection LinearProjection::position_mask(RealField mask) {
  LinearProjection E(Kind::position, mask.grid);
  E.mask_.resize(mask.values.size());
  for (std::size_t k = 0; k < mask.values.size(); ++k) {
    const double m = mask.values[k];
    if (m != 0.0 && m != 1.0) throw std::invalid_argument("position_mask: values must be 0 or 1");
    E.mask_[k] = m != 0.0;
  }
  return E;
}

LinearProjection LinearProjection::spectral(const Grid& grid, std::vector<std::uint8_t> modes) {
  if (modes.size() != grid.size()) throw std::invalid_argument("spectral: mask size mismatch");
  LinearProjection E(Kind::spectral, grid);
  for (auto& m : modes) m = m != 0;
  E.mask_ = std::move(modes);
  return E;
}

LinearProjection LinearProjection::momentum_band(const Grid& grid, int axis, double lo,
                                                 double hi) {
  if (axis < 0 || axis >= grid.dims()) throw std::invalid_argument("momentum_band: bad axis");
  const auto sp = Spectral::for_grid(grid);
  const auto& k = sp->wavenumber(axis);
  std::vector<std::uint8_t> modes(grid.size());
  for (std::size_t j = 0; j < modes.size(); ++j) modes[j] = k[j] >= lo && k[j] < hi;
  return spectral(grid, std::move(modes));
}

LinearProjection LinearProjection::rank_one(const WaveFunction& phi) {
  LinearProjection E(Kind::rank_one, phi.grid());
  E.phi_ = normalized(phi).data();
  return E;
}

LinearProjection LinearProjection::negation() const {
  LinearProjection E = *this;
  E.negated_ = !negated_;
  return E;
}

LinearProjection LinearProjection::meet(const LinearProjection& other) const {
  require_same_grid(grid_, other.grid_, "LinearProjection::meet");
  if (kind_ != other.kind_ || kind_ == Kind::rank_one) {
    throw std::invalid_argument("meet: defined for two position or two spectral masks");
  }
  LinearProjection E(kind_, grid_);
  E.mask_.resize(mask_.size());
  for (std::size_t k = 0; k < mask_.size(); ++k) {
    E.mask_[k] = (mask_[k] != negated_) && (other.mask_[k] != other.negated_);
  }
  return E;
}

WaveFunction LinearProjection::apply(const WaveFunction& psi) const {
  require_same_grid(grid_, psi.grid(), "LinearProjection::apply");
  const std::size_t n = psi.size();
  ComplexArray out(psi.data());
  switch (kind_) {
    case Kind::position:
      for (std::size_t k = 0; k < n; ++k) {
        if ((mask_[k] != 0) == negated_) out[k] = Complex(0.0, 0.0);
      }
      break;
    case Kind::spectral: {
      const auto sp = Spectral::for_grid(grid_);
      sp->forward(out.data(), out.data());
      for (std::size_t k = 0; k < n; ++k) {
        if ((mask_[k] != 0) == negated_) out[k] = Complex(0.0, 0.0);
      }
      sp->inverse(out.data(), out.data());
      break;
    }
    case Kind::rank_one: {
      const Complex c = inner(WaveFunction(grid_, phi_), psi);
      if (negated_) {
        for (std::size_t k = 0; k < n; ++k) out[k] -= c * phi_[k];
      } else {
        for (std::size_t k = 0; k < n; ++k) out[k] = c * phi_[k];
      }
      break;
    }
  }
  return WaveFunction(grid_, std::move(out));
}

double LinearProjection::expectation(const WaveFunction& psi) const {
  const double den = norm_squared(psi);
  if (!(den > 0.0)) throw std::invalid_argument("expectation: zero state");
  return norm_squared(apply(psi)) / den;
}

// ---------------------------------------------------------------------------
// Generalized projections

GeneralizedProjection::GeneralizedProjection(LinearProjection inner, GaugeTransform conjugator)
    : inner_(std::move(inner)), conjugator_(std::move(conjugator)) {
  if (!conjugator_.invertible() || !conjugator_.norm_preserving()) {
    throw std::invalid_argument(
        "GeneralizedProjection: conjugator must be invertible and norm-preserving");
  }
  inverse_ = invert(conjugator_);
}

GeneralizedProjection GeneralizedProjection::negation() const {
  return GeneralizedProjection(inner_.negation(), conjugator_);
}

WaveFunction GeneralizedProjection::apply(const WaveFunction& psi, double t,
                                          DensityFloor floor) const {
  if (conjugator_.is_identity()) return inner_.apply(psi);
  return nlgauge::apply(conjugator_, inner_.apply(nlgauge::apply(inverse_, psi, t, floor)), t,
                        floor);
}

double GeneralizedProjection::expectation(const WaveFunction& psi, double t,
                                          DensityFloor floor) const {
  const double den = norm_squared(psi);
  if (!(den > 0.0)) throw std::invalid_argument("expectation: zero state");
  return norm_squared(apply(psi, t, floor)) / den;
}

WaveFunction apply_generalized(const GeneralizedProjection& E, const WaveFunction& psi, double t,
                               DensityFloor floor) {
  return E.apply(psi, t, floor);
}

// ---------------------------------------------------------------------------
// PVM

GeneralizedPVM::GeneralizedPVM(const Grid& grid, Quantity quantity, int axis,
                               std::vector<double> edges, GaugeTransform conjugator)
    : grid_(grid),
      quantity_(quantity),
      axis_(axis),
      edges_(std::move(edges)),
      conjugator_(std::move(conjugator)) {
  if (axis < 0 || axis >= grid.dims()) throw std::invalid_argument("GeneralizedPVM: bad axis");
  if (!std::is_sorted(edges_.begin(), edges_.end()) ||
      std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("GeneralizedPVM: edges must be strictly increasing");
  }
  cell_of_.resize(grid.size());
  std::vector<double> value(grid.size());
  if (quantity == Quantity::position) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      value[k] = grid.coordinate(axis, grid.unravel(k)[axis]);
    }
  } else {
    const auto& kw = Spectral::for_grid(grid)->wavenumber(axis);
    value.assign(kw.begin(), kw.end());
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    cell_of_[k] = static_cast<std::size_t>(
        std::upper_bound(edges_.begin(), edges_.end(), value[k]) - edges_.begin());
  }
}

GeneralizedPVM::ValueSet GeneralizedPVM::cell(std::size_t i) const {
  if (i >= cells()) throw std::out_of_range("GeneralizedPVM: cell index");
  ValueSet s(cells(), 0);
  s[i] = 1;
  return s;
}

GeneralizedProjection GeneralizedPVM::projection(const ValueSet& B) const {
  if (B.size() != cells()) throw std::invalid_argument("GeneralizedPVM: value set size");
  std::vector<std::uint8_t> mask(grid_.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = B[cell_of_[k]] != 0;
  if (quantity_ == Quantity::momentum) {
    return GeneralizedProjection(LinearProjection::spectral(grid_, std::move(mask)), conjugator_);
  }
  RealArray m(mask.begin(), mask.end());
  return GeneralizedProjection(LinearProjection::position_mask(RealField(grid_, std::move(m))),
                               conjugator_);
}

double pvm_measure(const GeneralizedPVM& M, const WaveFunction& psi,
                   const GeneralizedPVM::ValueSet& B, double t, DensityFloor floor) {
  return M.projection(B).expectation(psi, t, floor);
}

// ---------------------------------------------------------------------------
// Equivalence table

double EquivalenceReport::max_deviation(const std::string& label) const {
  double m = 0.0;
  for (const auto& r : rows) {
    if (r.label == label) m = std::max(m, r.deviation);
  }
  return m;
}

double EquivalenceReport::max_deviation() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.deviation);
  return m;
}

EquivalenceReport equivalence_table_check(const WaveFunction& psi, const GaugeTransform& N,
                                          const std::vector<LinearProjection>& observables,
                                          const std::vector<BorelBin>& bins,
                                          const LinearSystem& system,
                                          const EvolveOptions& options) {
  const DensityFloor floor = options.step.floor;
  EvolveOptions lin_opts = options;
  lin_opts.scheme = Scheme::split_step;
  lin_opts.keep_states = true;
  const Trajectory linear =
      evolve(psi, params_linear(system.hbar, system.mass, system.potential), lin_opts);
  const Trajectory image = conjugated_evolve(apply(N, psi, 0.0, floor), N, system.potential,
                                             system.hbar, system.mass, lin_opts);
  const GaugeTransform inverse = invert(N);

  std::vector<GeneralizedProjection> conjugated;
  for (const auto& E : observables) conjugated.emplace_back(E, N);

  EquivalenceReport report;
  for (std::size_t i = 0; i < linear.times.size(); ++i) {
    const double t = linear.times[i];
    const WaveFunction& lin = linear.states[i];
    const WaveFunction& nl = image.states[i];
    const double scale = norm(lin);

    const WaveFunction mapped = apply(N, lin, t, floor);
    report.rows.push_back({t, "state", distance(apply(inverse, mapped, t, floor), lin) / scale});
    report.rows.push_back({t, "evolution", distance(nl, mapped) / scale});

    double obs_dev = 0.0;
    for (std::size_t k = 0; k < observables.size(); ++k) {
      obs_dev = std::max(obs_dev, std::abs(conjugated[k].expectation(nl, t, floor) -
                                           observables[k].expectation(lin)));
    }
    report.rows.push_back({t, "observables", obs_dev});

    double pos_dev = 0.0;
    for (const auto& B : bins) pos_dev = std::max(pos_dev, std::abs(p_B(nl, B) - p_B(lin, B)));
    report.rows.push_back({t, "position", pos_dev});
  }
  return report;
}

}  // namespace nlgauge
