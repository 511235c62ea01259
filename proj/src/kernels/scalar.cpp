#include "kernels_impl.hpp"

// Reference kernels. Complex arithmetic is spelled out on real and imaginary
// parts so the operation sequence is explicit and matches the SIMD variants.

namespace nlgauge::kernels::scalar {
namespace {

inline double re(const Complex& z) { return reinterpret_cast<const double(&)[2]>(z)[0]; }
inline double im(const Complex& z) { return reinterpret_cast<const double(&)[2]>(z)[1]; }

}  // namespace

void abs2(const Complex* psi, double* rho, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double a = re(psi[k]);
    const double b = im(psi[k]);
    rho[k] = a * a + b * b;
  }
}

void imag_conj_mul(const Complex* a, const Complex* b, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = re(a[k]) * im(b[k]) - im(a[k]) * re(b[k]);
  }
}

void cmul(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = re(a[k]), ai = im(a[k]);
    const double br = re(b[k]), bi = im(b[k]);
    out[k] = Complex(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void modulate(const Complex* psi, const double* g, const double* w, Complex* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double pr = re(psi[k]), pi = im(psi[k]);
    const double br = g[k], bi = -w[k];
    out[k] = Complex(pr * br - pi * bi, pr * bi + pi * br);
  }
}

void mul_real(const Complex* psi, const double* w, Complex* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = Complex(re(psi[k]) * w[k], im(psi[k]) * w[k]);
  }
}

void axpy(const Complex* x, double h, const Complex* y, Complex* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = Complex(re(x[k]) + h * re(y[k]), im(x[k]) + h * im(y[k]));
  }
}

void caxpy(Complex a, const Complex* x, Complex* out, std::size_t n) {
  const double ar = re(a), ai = im(a);
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = re(x[k]), xi = im(x[k]);
    out[k] = Complex(re(out[k]) + (ar * xr - ai * xi), im(out[k]) + (ar * xi + ai * xr));
  }
}

void rk4_combine(const Complex* psi, const Complex* k1, const Complex* k2, const Complex* k3,
                 const Complex* k4, double h6, Complex* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double sr = re(k1[k]) + 2.0 * re(k2[k]);
    double si = im(k1[k]) + 2.0 * im(k2[k]);
    sr = sr + 2.0 * re(k3[k]);
    si = si + 2.0 * im(k3[k]);
    sr = sr + re(k4[k]);
    si = si + im(k4[k]);
    out[k] = Complex(re(psi[k]) + h6 * sr, im(psi[k]) + h6 * si);
  }
}

void ratio_floor(const double* num, const double* rho, double floor, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double r = rho[k] > floor ? rho[k] : floor;
    out[k] = num[k] / r;
  }
}

void ratio_sq_floor(const double* num, const double* rho, double floor, double* out,
                    std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double r = rho[k] > floor ? rho[k] : floor;
    out[k] = num[k] / (r * r);
  }
}

}  // namespace nlgauge::kernels::scalar
