#pragma once

#include <span>
#include <vector>

#include "nlgauge/grid.hpp"
#include "nlgauge/types.hpp"

namespace nlgauge {

/// Real scalar field sampled on a grid (potentials, phases, indicators).
struct RealField {
  Grid grid;
  RealArray values;

  RealField(Grid g, RealArray v);
  static RealField constant(const Grid& g, double value);
  static RealField zeros(const Grid& g) { return constant(g, 0.0); }
};

/// d real components on a grid.
using VectorComponents = std::vector<RealArray>;

/// Complex amplitudes of a pure state on a grid. Immutable once built; every
/// amplitude is finite.
class WaveFunction {
 public:
  WaveFunction(Grid grid, ComplexArray values);
  static WaveFunction zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  const ComplexArray& data() const { return values_; }
  const Complex& operator[](std::size_t k) const { return values_[k]; }

 private:
  Grid grid_;
  ComplexArray values_;
};

/// rho = |psi|^2 and J = Im(conj(psi) grad psi).
struct HydroFields {
  RealArray rho;
  VectorComponents current;
};

// Hilbert-space structure. Sums run in flat index order.
Complex inner(const WaveFunction& a, const WaveFunction& b);
double norm_squared(const WaveFunction& psi);
double norm(const WaveFunction& psi);
/// L2 norm of a - b.
double distance(const WaveFunction& a, const WaveFunction& b);
/// distance(a, b) / norm(b).
double relative_distance(const WaveFunction& a, const WaveFunction& b);
double max_abs(const WaveFunction& psi);

WaveFunction scaled(const WaveFunction& psi, Complex factor);
WaveFunction normalized(const WaveFunction& psi);
WaveFunction sum(const WaveFunction& a, const WaveFunction& b, Complex cb = 1.0);

// Spectral calculus. Exact for band-limited fields.
VectorComponents spectral_gradient(const Grid& grid, std::span<const double> f);
RealArray spectral_laplacian(const Grid& grid, std::span<const double> f);
std::vector<ComplexArray> spectral_gradient(const WaveFunction& psi);
ComplexArray spectral_laplacian(const WaveFunction& psi);
/// Forward transform of psi (unnormalized).
ComplexArray spectrum(const WaveFunction& psi);

HydroFields hydro(const WaveFunction& psi);

/// <p_axis> computed in spectral space, in units of hbar.
double momentum_expectation(const WaveFunction& psi, int axis, double hbar = 1.0);
/// <x_axis^power> / ||psi||^2.
double position_moment(const WaveFunction& psi, int axis, int power);

/// Normalized Gaussian packet exp(i k.x) exp(-|x - c|^2 / (4 sigma^2)).
/// Rejects widths below three grid spacings and packets closer than three
/// widths to the box edge.
WaveFunction make_gaussian(const Grid& grid, std::span<const double> center, double sigma,
                           std::span<const double> momentum);

/// Normalized plane wave exp(i k.x) with k_a = 2 pi modes[a] / L_a.
WaveFunction make_plane_wave(const Grid& grid, std::span<const int> modes);

}  // namespace nlgauge
