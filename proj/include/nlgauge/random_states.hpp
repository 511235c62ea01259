#pragma once

#include <cstdint>
#include <random>

#include "nlgauge/field.hpp"

namespace nlgauge {

/// Reproducible random stream: std::mt19937_64, doubles built from the top
/// 53 bits of each draw. Unlike std::uniform_real_distribution this mapping
/// is fixed, so a seed yields the same states with every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Normalized state whose modulus is bounded away from zero: a positive
/// background plus periodic bumps, times a smooth periodic phase.
WaveFunction random_nodeless_state(const Grid& grid, RandomStream& rng);

/// Normalized Gaussian packet with parameters drawn in physical units
/// (centre within the middle half of the box, width in [0.8, 2] reduced to
/// fit small boxes, momentum in [-4, 4] per axis). The same seed gives the
/// same continuum packet on any grid covering the same box.
WaveFunction random_packet(const Grid& grid, RandomStream& rng);

}  // namespace nlgauge
