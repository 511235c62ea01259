#include "nlgauge/random_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace nlgauge {

WaveFunction random_nodeless_state(const Grid& grid, RandomStream& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const int d = grid.dims();

  struct Bump {
    double weight;
    double sharpness;
    double center[3];
  };
  const double background = rng.uniform(0.05, 0.2);
  std::vector<Bump> bumps(3);
  for (auto& b : bumps) {
    b.weight = rng.uniform(0.5, 1.0);
    b.sharpness = rng.uniform(2.0, 12.0);
    for (int a = 0; a < d; ++a) b.center[a] = rng.uniform(-0.25, 0.25) * grid.length(a);
  }
  // Phase: three Fourier modes per axis.
  double cos_coef[3][3], sin_coef[3][3];
  for (int a = 0; a < d; ++a) {
    for (int m = 0; m < 3; ++m) {
      cos_coef[a][m] = rng.uniform(-1.0, 1.0);
      sin_coef[a][m] = rng.uniform(-1.0, 1.0);
    }
  }

  ComplexArray v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto idx = grid.unravel(k);
    double modulus = background;
    for (const auto& b : bumps) {
      double e = 0.0;
      for (int a = 0; a < d; ++a) {
        const double x = grid.coordinate(a, idx[a]);
        e += std::cos(two_pi * (x - b.center[a]) / grid.length(a)) - 1.0;
      }
      modulus += b.weight * std::exp(b.sharpness * e);
    }
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = grid.coordinate(a, idx[a]);
      for (int m = 0; m < 3; ++m) {
        const double arg = two_pi * (m + 1) * x / grid.length(a);
        phase += cos_coef[a][m] * std::cos(arg) + sin_coef[a][m] * std::sin(arg);
      }
    }
    v[k] = modulus * Complex(std::cos(phase), std::sin(phase));
  }
  return normalized(WaveFunction(grid, std::move(v)));
}

WaveFunction random_packet(const Grid& grid, RandomStream& rng) {
  const int d = grid.dims();
  std::vector<double> center(d), momentum(d);
  for (int a = 0; a < d; ++a) center[a] = rng.uniform(-0.25, 0.25) * grid.length(a);
  // Shrink the width on small boxes so the packet stays three widths inside.
  double sigma = rng.uniform(0.8, 2.0);
  for (int a = 0; a < d; ++a) {
    sigma = std::min(sigma, (0.5 * grid.length(a) - std::abs(center[a])) / 3.05);
  }
  sigma = std::max(sigma, 3.0 * grid.max_spacing());
  for (int a = 0; a < d; ++a) momentum[a] = rng.uniform(-4.0, 4.0);
  return make_gaussian(grid, center, sigma, momentum);
}

}  // namespace nlgauge
