#pragma once

#include <memory>

#include "nlgauge/grid.hpp"
#include "nlgauge/types.hpp"

namespace nlgauge {

/// FFT plans and wavenumber tables for one grid shape.
///
/// The forward transform is unnormalized, the inverse divides by the number
/// of samples, so Parseval reads  sum |psi|^2 = sum |psi_hat|^2 / N.
/// Instances are shared through `for_grid` and are safe to use concurrently;
/// only plan creation goes through FFTW's (serialized) planner.
class Spectral {
 public:
  static std::shared_ptr<const Spectral> for_grid(const Grid& grid);

  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }

  /// out = F[in]. `in` and `out` may alias.
  void forward(const Complex* in, Complex* out) const;
  /// out = F^{-1}[in] (normalized). `in` and `out` may alias.
  void inverse(const Complex* in, Complex* out) const;

  /// Angular wavenumber of every flat spectral index along `axis`; the
  /// Nyquist row carries -pi/dx.
  const RealArray& wavenumber(int axis) const { return k_[axis]; }
  /// Same table with the Nyquist row zeroed: used for odd derivatives so
  /// derivatives of real fields stay real.
  const RealArray& derivative_wavenumber(int axis) const { return kd_[axis]; }
  /// |k|^2 including Nyquist rows.
  const RealArray& k_squared() const { return k2_; }

  /// Largest |k| representable along `axis` (pi / dx).
  double nyquist(int axis) const;

 private:
  explicit Spectral(const Grid& grid);

  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
  RealArray k_[3];
  RealArray kd_[3];
  RealArray k2_;
};

}  // namespace nlgauge
