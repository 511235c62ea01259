#include "nlgauge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlgauge/types.hpp"

namespace nlgauge {

Grid::Grid(std::vector<std::size_t> points, std::vector<double> lengths) {
  if (points.empty() || points.size() > 3) {
    throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
  }
  if (lengths.size() != points.size()) {
    throw std::invalid_argument("Grid: need one length per axis");
  }
  dims_ = static_cast<int>(points.size());
  size_ = 1;
  cell_volume_ = 1.0;
  for (int a = 0; a < dims_; ++a) {
    if (points[a] < 8) {
      throw std::invalid_argument("Grid: at least 8 points per axis required");
    }
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) {
      throw std::invalid_argument("Grid: axis lengths must be positive and finite");
    }
    points_[a] = points[a];
    lengths_[a] = lengths[a];
    size_ *= points[a];
    cell_volume_ *= spacing(a);
  }
}

double Grid::max_spacing() const {
  double h = 0.0;
  for (int a = 0; a < dims_; ++a) h = std::max(h, spacing(a));
  return h;
}

double Grid::min_spacing() const {
  double h = spacing(0);
  for (int a = 1; a < dims_; ++a) h = std::min(h, spacing(a));
  return h;
}

double Grid::volume() const {
  double v = 1.0;
  for (int a = 0; a < dims_; ++a) v *= lengths_[a];
  return v;
}

std::array<std::size_t, 3> Grid::unravel(std::size_t flat) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = dims_ - 1; a >= 0; --a) {
    idx[a] = flat % points_[a];
    flat /= points_[a];
  }
  return idx;
}

std::vector<std::vector<double>> Grid::coordinates() const {
  std::vector<std::vector<double>> xs(dims_, std::vector<double>(size_));
  for (std::size_t k = 0; k < size_; ++k) {
    const auto idx = unravel(k);
    for (int a = 0; a < dims_; ++a) xs[a][k] = coordinate(a, idx[a]);
  }
  return xs;
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << dims_ << "D grid [";
  for (int a = 0; a < dims_; ++a) os << (a ? " x " : "") << points_[a];
  os << "] box [";
  for (int a = 0; a < dims_; ++a) os << (a ? " x " : "") << lengths_[a];
  os << "]";
  return os.str();
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b) {
    throw GridMismatch(std::string(where) + ": operands live on different grids (" +
                       a.describe() + " vs " + b.describe() + ")");
  }
}

}  // namespace nlgauge
