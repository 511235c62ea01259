#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace nlgauge {

/// Uniform periodic lattice on the box [-L_a/2, L_a/2) in 1 to 3 dimensions.
///
/// Samples sit at cell centres, x_j = -L/2 + (j + 1/2) dx, so the lattice is
/// mirror-symmetric about the origin and x = 0 is a cell boundary. Flat
/// indices are row-major with axis 0 slowest (the FFTW layout).
class Grid {
 public:
  Grid(std::vector<std::size_t> points, std::vector<double> lengths);

  static Grid line(std::size_t n, double length) { return Grid({n}, {length}); }
  static Grid square(std::size_t n, double length) { return Grid({n, n}, {length, length}); }

  int dims() const { return dims_; }
  std::size_t points(int axis) const { return points_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / static_cast<double>(points_[axis]); }
  double max_spacing() const;
  double min_spacing() const;

  std::size_t size() const { return size_; }
  double cell_volume() const { return cell_volume_; }
  double volume() const;

  /// Coordinate of sample `index` along `axis`.
  double coordinate(int axis, std::size_t index) const {
    return -0.5 * lengths_[axis] + (static_cast<double>(index) + 0.5) * spacing(axis);
  }

  /// Multi-index of a flat index (unused axes are zero).
  std::array<std::size_t, 3> unravel(std::size_t flat) const;

  /// Per-axis coordinates of every sample, axis-major: result[a][flat].
  std::vector<std::vector<double>> coordinates() const;

  std::string describe() const;

  bool operator==(const Grid& other) const {
    return dims_ == other.dims_ && points_ == other.points_ && lengths_ == other.lengths_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int dims_;
  std::array<std::size_t, 3> points_{1, 1, 1};
  std::array<double, 3> lengths_{1.0, 1.0, 1.0};
  std::size_t size_;
  double cell_volume_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace nlgauge
