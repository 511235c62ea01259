#pragma once

#include <functional>
#include <memory>

#include "nlgauge/field.hpp"

namespace nlgauge {

/// Real-valued function of time. Either a constant (the common case, kept
/// symbolic so zero terms can be skipped) or a callable with an optional
/// analytic derivative.
class ScalarPath {
 public:
  using Fn = std::function<double(double)>;

  /// Step of the central-difference fallback for `rate`. Truncation error
  /// is h^2 |f'''| / 6 and rounding error about 1e-16 |f| / h, so O(1) paths
  /// get derivatives good to roughly 1e-10.
  static constexpr double kRateStep = 1e-5;

  ScalarPath(double constant = 0.0) : constant_(constant) {}
  ScalarPath(Fn value, Fn rate = {});

  double operator()(double t) const { return value_ ? value_(t) : constant_; }
  double rate(double t) const;

  bool is_constant() const { return !value_; }
  bool is_zero() const { return !value_ && constant_ == 0.0; }
  bool has_analytic_rate() const { return !value_ || static_cast<bool>(rate_); }
  /// Value of a constant path; throws for time-dependent ones.
  double constant() const;

  ScalarPath operator-() const;
  friend ScalarPath operator+(const ScalarPath& a, const ScalarPath& b);
  friend ScalarPath operator-(const ScalarPath& a, const ScalarPath& b) { return a + (-b); }
  friend ScalarPath operator*(const ScalarPath& a, const ScalarPath& b);

 private:
  double constant_ = 0.0;
  Fn value_;
  Fn rate_;
};

/// Real field that may depend on time: empty (identically zero), static, or
/// sampled from a callable. Static fields are returned without copying.
class FieldPath {
 public:
  using Sampler = std::function<RealField(double)>;

  FieldPath() = default;
  FieldPath(RealField field);
  explicit FieldPath(Sampler sampler);

  bool is_zero() const { return !field_ && !sampler_; }
  bool is_static() const { return !sampler_; }

  /// Field at time t; a zero path yields zeros on `grid`.
  RealField at(double t, const Grid& grid) const;
  /// Static field, or nullptr when the path is zero or time-dependent.
  const RealField* static_field() const { return field_.get(); }

  friend FieldPath operator+(const FieldPath& a, const FieldPath& b);
  /// Pointwise scale by a time-dependent factor.
  friend FieldPath operator*(const ScalarPath& s, const FieldPath& f);

 private:
  std::shared_ptr<const RealField> field_;
  Sampler sampler_;
};

}  // namespace nlgauge
