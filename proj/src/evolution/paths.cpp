#include "nlgauge/paths.hpp"

#include <stdexcept>

namespace nlgauge {

ScalarPath::ScalarPath(Fn value, Fn rate) : value_(std::move(value)), rate_(std::move(rate)) {
  if (!value_) throw std::invalid_argument("ScalarPath: empty value function");
}

double ScalarPath::rate(double t) const {
  if (!value_) return 0.0;
  if (rate_) return rate_(t);
  const double h = kRateStep;
  return (value_(t + h) - value_(t - h)) / (2.0 * h);
}

double ScalarPath::constant() const {
  if (value_) throw std::logic_error("ScalarPath: path is time-dependent");
  return constant_;
}

ScalarPath ScalarPath::operator-() const {
  if (!value_) return ScalarPath(-constant_);
  Fn v = value_;
  Fn r = rate_;
  return ScalarPath([v](double t) { return -v(t); },
                    r ? Fn([r](double t) { return -r(t); }) : Fn{});
}

ScalarPath operator+(const ScalarPath& a, const ScalarPath& b) {
  if (a.is_constant() && b.is_constant()) return ScalarPath(a.constant_ + b.constant_);
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  ScalarPath::Fn rate;
  if (a.has_analytic_rate() && b.has_analytic_rate()) {
    rate = [a, b](double t) { return a.rate(t) + b.rate(t); };
  }
  return ScalarPath([a, b](double t) { return a(t) + b(t); }, rate);
}

ScalarPath operator*(const ScalarPath& a, const ScalarPath& b) {
  if (a.is_constant() && b.is_constant()) return ScalarPath(a.constant_ * b.constant_);
  if (a.is_zero() || b.is_zero()) return ScalarPath(0.0);
  ScalarPath::Fn rate;
  if (a.has_analytic_rate() && b.has_analytic_rate()) {
    rate = [a, b](double t) { return a.rate(t) * b(t) + a(t) * b.rate(t); };
  }
  return ScalarPath([a, b](double t) { return a(t) * b(t); }, rate);
}

FieldPath::FieldPath(RealField field) : field_(std::make_shared<const RealField>(std::move(field))) {}

FieldPath::FieldPath(Sampler sampler) : sampler_(std::move(sampler)) {
  if (!sampler_) throw std::invalid_argument("FieldPath: empty sampler");
}

RealField FieldPath::at(double t, const Grid& grid) const {
  if (sampler_) {
    RealField f = sampler_(t);
    require_same_grid(f.grid, grid, "FieldPath");
    return f;
  }
  if (field_) {
    require_same_grid(field_->grid, grid, "FieldPath");
    return *field_;
  }
  return RealField::zeros(grid);
}

FieldPath operator+(const FieldPath& a, const FieldPath& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_static() && b.is_static()) {
    require_same_grid(a.field_->grid, b.field_->grid, "FieldPath sum");
    RealField out = *a.field_;
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += b.field_->values[k];
    return FieldPath(std::move(out));
  }
  return FieldPath(FieldPath::Sampler([a, b](double t) {
    const Grid& g = a.field_ ? a.field_->grid : (b.field_ ? b.field_->grid : a.sampler_(t).grid);
    RealField out = a.at(t, g);
    const RealField other = b.at(t, g);
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += other.values[k];
    return out;
  }));
}

FieldPath operator*(const ScalarPath& s, const FieldPath& f) {
  if (f.is_zero() || s.is_zero()) return FieldPath();
  if (s.is_constant() && f.is_static()) {
    RealField out = *f.field_;
    const double c = s.constant();
    for (auto& v : out.values) v *= c;
    return FieldPath(std::move(out));
  }
  return FieldPath(FieldPath::Sampler([s, f](double t) {
    RealField out = f.field_ ? *f.field_ : f.sampler_(t);
    const double c = s(t);
    for (auto& v : out.values) v *= c;
    return out;
  }));
}

}  // namespace nlgauge
