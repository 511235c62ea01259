#include "nlgauge/field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nlgauge/kernels.hpp"
#include "nlgauge/spectral.hpp"

namespace nlgauge {

RealField::RealField(Grid g, RealArray v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("RealField: value count does not match grid");
  }
}

RealField RealField::constant(const Grid& g, double value) {
  return RealField(g, RealArray(g.size(), value));
}

WaveFunction::WaveFunction(Grid grid, ComplexArray values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("WaveFunction: amplitude count does not match grid");
  }
  for (const auto& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("WaveFunction: non-finite amplitude");
    }
  }
}

WaveFunction WaveFunction::zeros(const Grid& grid) {
  return WaveFunction(grid, ComplexArray(grid.size(), Complex(0.0, 0.0)));
}

Complex inner(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Complex z = std::conj(a[k]) * b[k];
    re += z.real();
    im += z.imag();
  }
  const double dv = a.grid().cell_volume();
  return {re * dv, im * dv};
}

double norm_squared(const WaveFunction& psi) {
  double s = 0.0;
  for (const auto& z : psi.values()) s += std::norm(z);
  return s * psi.grid().cell_volume();
}

double norm(const WaveFunction& psi) { return std::sqrt(norm_squared(psi)); }

double distance(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a.grid(), b.grid(), "distance");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s * a.grid().cell_volume());
}

double relative_distance(const WaveFunction& a, const WaveFunction& b) {
  return distance(a, b) / norm(b);
}

double max_abs(const WaveFunction& psi) {
  double m = 0.0;
  for (const auto& z : psi.values()) m = std::max(m, std::abs(z));
  return m;
}

WaveFunction scaled(const WaveFunction& psi, Complex factor) {
  ComplexArray out(psi.data());
  for (auto& z : out) z *= factor;
  return WaveFunction(psi.grid(), std::move(out));
}

WaveFunction normalized(const WaveFunction& psi) {
  const double n = norm(psi);
  if (!(n > 0.0)) throw std::invalid_argument("normalized: zero state");
  return scaled(psi, 1.0 / n);
}

WaveFunction sum(const WaveFunction& a, const WaveFunction& b, Complex cb) {
  require_same_grid(a.grid(), b.grid(), "sum");
  ComplexArray out(a.data());
  kernels::active().caxpy(cb, b.data().data(), out.data(), out.size());
  return WaveFunction(a.grid(), std::move(out));
}

namespace {

ComplexArray to_complex(std::span<const double> f) {
  ComplexArray z(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) z[k] = Complex(f[k], 0.0);
  return z;
}

// out = F^{-1}[ i k_axis * hat ]
void derivative_from_spectrum(const Spectral& sp, const ComplexArray& hat, int axis,
                              ComplexArray& out) {
  const auto& k = sp.derivative_wavenumber(axis);
  for (std::size_t j = 0; j < hat.size(); ++j) {
    out[j] = Complex(-k[j] * hat[j].imag(), k[j] * hat[j].real());
  }
  sp.inverse(out.data(), out.data());
}

void laplacian_from_spectrum(const Spectral& sp, const ComplexArray& hat, ComplexArray& out) {
  const auto& k2 = sp.k_squared();
  for (std::size_t j = 0; j < hat.size(); ++j) out[j] = -k2[j] * hat[j];
  sp.inverse(out.data(), out.data());
}

}  // namespace

VectorComponents spectral_gradient(const Grid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw std::invalid_argument("spectral_gradient: size mismatch");
  const auto sp = Spectral::for_grid(grid);
  ComplexArray hat = to_complex(f);
  sp->forward(hat.data(), hat.data());
  VectorComponents grad(grid.dims(), RealArray(grid.size()));
  ComplexArray work(grid.size());
  for (int a = 0; a < grid.dims(); ++a) {
    derivative_from_spectrum(*sp, hat, a, work);
    for (std::size_t j = 0; j < work.size(); ++j) grad[a][j] = work[j].real();
  }
  return grad;
}

RealArray spectral_laplacian(const Grid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw std::invalid_argument("spectral_laplacian: size mismatch");
  const auto sp = Spectral::for_grid(grid);
  ComplexArray hat = to_complex(f);
  sp->forward(hat.data(), hat.data());
  ComplexArray work(grid.size());
  laplacian_from_spectrum(*sp, hat, work);
  RealArray out(grid.size());
  for (std::size_t j = 0; j < work.size(); ++j) out[j] = work[j].real();
  return out;
}

std::vector<ComplexArray> spectral_gradient(const WaveFunction& psi) {
  const auto sp = Spectral::for_grid(psi.grid());
  const ComplexArray hat = spectrum(psi);
  std::vector<ComplexArray> grad(psi.grid().dims(), ComplexArray(psi.size()));
  for (int a = 0; a < psi.grid().dims(); ++a) derivative_from_spectrum(*sp, hat, a, grad[a]);
  return grad;
}

ComplexArray spectral_laplacian(const WaveFunction& psi) {
  const auto sp = Spectral::for_grid(psi.grid());
  const ComplexArray hat = spectrum(psi);
  ComplexArray out(psi.size());
  laplacian_from_spectrum(*sp, hat, out);
  return out;
}

ComplexArray spectrum(const WaveFunction& psi) {
  const auto sp = Spectral::for_grid(psi.grid());
  ComplexArray hat(psi.size());
  sp->forward(psi.data().data(), hat.data());
  return hat;
}

HydroFields hydro(const WaveFunction& psi) {
  const auto& kt = kernels::active();
  HydroFields h;
  h.rho.resize(psi.size());
  kt.abs2(psi.data().data(), h.rho.data(), psi.size());
  const auto grad = spectral_gradient(psi);
  for (const auto& g : grad) {
    RealArray j(psi.size());
    kt.imag_conj_mul(psi.data().data(), g.data(), j.data(), psi.size());
    h.current.push_back(std::move(j));
  }
  return h;
}

double momentum_expectation(const WaveFunction& psi, int axis, double hbar) {
  const auto sp = Spectral::for_grid(psi.grid());
  const ComplexArray hat = spectrum(psi);
  const auto& k = sp->wavenumber(axis);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < hat.size(); ++j) {
    const double w = std::norm(hat[j]);
    num += k[j] * w;
    den += w;
  }
  if (!(den > 0.0)) throw std::invalid_argument("momentum_expectation: zero state");
  return hbar * num / den;
}

double position_moment(const WaveFunction& psi, int axis, int power) {
  const Grid& g = psi.grid();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double w = std::norm(psi[k]);
    const double x = g.coordinate(axis, g.unravel(k)[axis]);
    num += std::pow(x, power) * w;
    den += w;
  }
  if (!(den > 0.0)) throw std::invalid_argument("position_moment: zero state");
  return num / den;
}

WaveFunction make_gaussian(const Grid& grid, std::span<const double> center, double sigma,
                           std::span<const double> momentum) {
  const int d = grid.dims();
  if (static_cast<int>(center.size()) != d || static_cast<int>(momentum.size()) != d) {
    throw std::invalid_argument("make_gaussian: center and momentum need one entry per axis");
  }
  if (!(sigma >= 3.0 * grid.max_spacing())) {
    std::ostringstream os;
    os << "make_gaussian: width " << sigma << " is under-resolved; need sigma >= 3 dx = "
       << 3.0 * grid.max_spacing();
    throw std::invalid_argument(os.str());
  }
  for (int a = 0; a < d; ++a) {
    if (std::abs(center[a]) + 3.0 * sigma > 0.5 * grid.length(a)) {
      std::ostringstream os;
      os << "make_gaussian: packet on axis " << a << " (center " << center[a] << ", width "
         << sigma << ") reaches the box edge at +-" << 0.5 * grid.length(a);
      throw std::invalid_argument(os.str());
    }
  }
  const double inv4s2 = 1.0 / (4.0 * sigma * sigma);
  ComplexArray v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto idx = grid.unravel(k);
    double r2 = 0.0, phase = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = grid.coordinate(a, idx[a]);
      r2 += (x - center[a]) * (x - center[a]);
      phase += momentum[a] * x;
    }
    v[k] = std::exp(-r2 * inv4s2) * Complex(std::cos(phase), std::sin(phase));
  }
  return normalized(WaveFunction(grid, std::move(v)));
}

WaveFunction make_plane_wave(const Grid& grid, std::span<const int> modes) {
  const int d = grid.dims();
  if (static_cast<int>(modes.size()) != d) {
    throw std::invalid_argument("make_plane_wave: need one mode index per axis");
  }
  const double amp = 1.0 / std::sqrt(grid.volume());
  ComplexArray v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto idx = grid.unravel(k);
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      phase += 2.0 * std::numbers::pi * modes[a] * grid.coordinate(a, idx[a]) / grid.length(a);
    }
    v[k] = amp * Complex(std::cos(phase), std::sin(phase));
  }
  return WaveFunction(grid, std::move(v));
}

}  // namespace nlgauge
