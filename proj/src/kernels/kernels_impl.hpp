#pragma once

#include <cstddef>

#include "nlgauge/types.hpp"

namespace nlgauge::kernels {

#define NLGAUGE_KERNEL_DECLS                                                                   \
  void abs2(const Complex* psi, double* rho, std::size_t n);                                   \
  void imag_conj_mul(const Complex* a, const Complex* b, double* out, std::size_t n);          \
  void cmul(const Complex* a, const Complex* b, Complex* out, std::size_t n);                  \
  void modulate(const Complex* psi, const double* g, const double* w, Complex* out,            \
                std::size_t n);                                                                \
  void mul_real(const Complex* psi, const double* w, Complex* out, std::size_t n);             \
  void axpy(const Complex* x, double h, const Complex* y, Complex* out, std::size_t n);        \
  void caxpy(Complex a, const Complex* x, Complex* out, std::size_t n);                        \
  void rk4_combine(const Complex* psi, const Complex* k1, const Complex* k2, const Complex* k3, \
                   const Complex* k4, double h6, Complex* out, std::size_t n);                 \
  void ratio_floor(const double* num, const double* rho, double floor, double* out,            \
                   std::size_t n);                                                             \
  void ratio_sq_floor(const double* num, const double* rho, double floor, double* out,         \
                      std::size_t n);

namespace scalar {
NLGAUGE_KERNEL_DECLS
}

#ifdef NLGAUGE_HAVE_AVX2_KERNELS
namespace avx2 {
NLGAUGE_KERNEL_DECLS
}
#endif

#undef NLGAUGE_KERNEL_DECLS

}  // namespace nlgauge::kernels
