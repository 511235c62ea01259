#include "nlgauge/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace nlgauge {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using GridKey = std::tuple<int, std::array<std::size_t, 3>, std::array<double, 3>>;

GridKey key_of(const Grid& g) {
  std::array<std::size_t, 3> n{1, 1, 1};
  std::array<double, 3> l{0, 0, 0};
  for (int a = 0; a < g.dims(); ++a) {
    n[a] = g.points(a);
    l[a] = g.length(a);
  }
  return {g.dims(), n, l};
}

fftw_complex* fc(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

struct Spectral::Plans {
  // Out-of-place and in-place plans for each direction. FFTW_ESTIMATE keeps
  // plan selection (and therefore rounding) independent of timing noise.
  fftw_plan forward_oop = nullptr;
  fftw_plan inverse_oop = nullptr;
  fftw_plan forward_ip = nullptr;
  fftw_plan inverse_ip = nullptr;
};

Spectral::Spectral(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int d = grid.dims();
  std::array<int, 3> n{};
  for (int a = 0; a < d; ++a) n[a] = static_cast<int>(grid.points(a));

  {
    ComplexArray a(grid.size()), b(grid.size());
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE;
    plans_->forward_oop = fftw_plan_dft(d, n.data(), fc(a.data()), fc(b.data()), FFTW_FORWARD, flags);
    plans_->inverse_oop = fftw_plan_dft(d, n.data(), fc(a.data()), fc(b.data()), FFTW_BACKWARD, flags);
    plans_->forward_ip = fftw_plan_dft(d, n.data(), fc(a.data()), fc(a.data()), FFTW_FORWARD, flags);
    plans_->inverse_ip = fftw_plan_dft(d, n.data(), fc(a.data()), fc(a.data()), FFTW_BACKWARD, flags);
  }

  const std::size_t size = grid.size();
  k2_.assign(size, 0.0);
  for (int a = 0; a < d; ++a) {
    k_[a].resize(size);
    kd_[a].resize(size);
  }
  for (std::size_t flat = 0; flat < size; ++flat) {
    const auto idx = grid.unravel(flat);
    for (int a = 0; a < d; ++a) {
      const auto na = static_cast<long long>(grid.points(a));
      const auto i = static_cast<long long>(idx[a]);
      const long long m = (2 * i < na) ? i : i - na;
      const double k = 2.0 * std::numbers::pi * static_cast<double>(m) / grid.length(a);
      k_[a][flat] = k;
      kd_[a][flat] = (2 * i == na) ? 0.0 : k;
      k2_[flat] += k * k;
    }
  }
}

Spectral::~Spectral() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->forward_oop);
  fftw_destroy_plan(plans_->inverse_oop);
  fftw_destroy_plan(plans_->forward_ip);
  fftw_destroy_plan(plans_->inverse_ip);
}

std::shared_ptr<const Spectral> Spectral::for_grid(const Grid& grid) {
  static std::mutex cache_mutex;
  static std::map<GridKey, std::weak_ptr<const Spectral>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[key_of(grid)];
  if (auto existing = slot.lock()) return existing;
  std::shared_ptr<const Spectral> created(new Spectral(grid));
  slot = created;
  return created;
}

void Spectral::forward(const Complex* in, Complex* out) const {
  fftw_execute_dft(in == out ? plans_->forward_ip : plans_->forward_oop, fc(in), fc(out));
}

void Spectral::inverse(const Complex* in, Complex* out) const {
  fftw_execute_dft(in == out ? plans_->inverse_ip : plans_->inverse_oop, fc(in), fc(out));
  const double scale = 1.0 / static_cast<double>(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] *= scale;
}

double Spectral::nyquist(int axis) const { return std::numbers::pi / grid_.spacing(axis); }

}  // namespace nlgauge
