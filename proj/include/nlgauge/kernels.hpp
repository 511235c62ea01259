#pragma once

// Pointwise arithmetic kernels used by the spectral operators and the
// integrators. Every kernel exists as a scalar reference and, on x86-64, as an
// AVX2 variant chosen at runtime. The variants perform the same IEEE
// operations in the same order (no FMA, no reassociation), so their results
// are bit-identical; tests/unit/test_kernels.cpp enforces this.
//
// Reductions (norms, inner products) are deliberately not here: they stay
// scalar and sequential so sums are reproducible.

#include <cstddef>

#include "nlgauge/types.hpp"

namespace nlgauge::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  /// rho[k] = re^2 + im^2
  void (*abs2)(const Complex* psi, double* rho, std::size_t n);
  /// out[k] = Im(conj(a[k]) * b[k])
  void (*imag_conj_mul)(const Complex* a, const Complex* b, double* out, std::size_t n);
  /// out[k] = a[k] * b[k]
  void (*cmul)(const Complex* a, const Complex* b, Complex* out, std::size_t n);
  /// out[k] = psi[k] * (g[k] - i w[k])
  void (*modulate)(const Complex* psi, const double* g, const double* w, Complex* out,
                   std::size_t n);
  /// out[k] = psi[k] * w[k]
  void (*mul_real)(const Complex* psi, const double* w, Complex* out, std::size_t n);
  /// out[k] = x[k] + h * y[k]
  void (*axpy)(const Complex* x, double h, const Complex* y, Complex* out, std::size_t n);
  /// out[k] += a * x[k]
  void (*caxpy)(Complex a, const Complex* x, Complex* out, std::size_t n);
  /// out[k] = psi[k] + h6 * (((k1 + 2 k2) + 2 k3) + k4)
  void (*rk4_combine)(const Complex* psi, const Complex* k1, const Complex* k2,
                      const Complex* k3, const Complex* k4, double h6, Complex* out,
                      std::size_t n);
  /// out[k] = num[k] / max(rho[k], floor)
  void (*ratio_floor)(const double* num, const double* rho, double floor, double* out,
                      std::size_t n);
  /// out[k] = num[k] / (r * r), r = max(rho[k], floor)
  void (*ratio_sq_floor)(const double* num, const double* rho, double floor, double* out,
                         std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table();

bool available(Isa isa);

/// Kernel table used by the library. Chosen on first use: the NLGAUGE_SIMD
/// environment variable (`scalar`, `avx2`, `auto`) overrides CPU detection.
const KernelTable& active();

/// Force a variant (tests, benchmarks). Throws if unavailable.
void select(Isa isa);

}  // namespace nlgauge::kernels
