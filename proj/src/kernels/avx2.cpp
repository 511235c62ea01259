// AVX2 variants of the pointwise kernels. Compiled with -mavx2 (never -mfma)
// and only called after a runtime CPU check. Remainders fall back to the
// scalar reference, which performs the identical operation sequence.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace nlgauge::kernels::avx2 {
namespace {

inline const double* dp(const Complex* z) { return reinterpret_cast<const double*>(z); }
inline double* dp(Complex* z) { return reinterpret_cast<double*>(z); }

// [ar ai | ar' ai'] x [br bi | br' bi'] with the scalar operation order.
inline __m256d complex_mul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a_re, b), _mm256_mul_pd(a_im, b_sw));
}

}  // namespace

void abs2(const Complex* psi, double* rho, std::size_t n) {
  const double* p = dp(psi);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d z0 = _mm256_loadu_pd(p + 2 * k);
    const __m256d z1 = _mm256_loadu_pd(p + 2 * k + 4);
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(z0, z0), _mm256_mul_pd(z1, z1));
    _mm256_storeu_pd(rho + k, _mm256_permute4x64_pd(h, 0xD8));
  }
  scalar::abs2(psi + k, rho + k, n - k);
}

void imag_conj_mul(const Complex* a, const Complex* b, double* out, std::size_t n) {
  const double* pa = dp(a);
  const double* pb = dp(b);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * k);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * k + 4);
    const __m256d b0 = _mm256_permute_pd(_mm256_loadu_pd(pb + 2 * k), 0x5);
    const __m256d b1 = _mm256_permute_pd(_mm256_loadu_pd(pb + 2 * k + 4), 0x5);
    const __m256d h = _mm256_hsub_pd(_mm256_mul_pd(a0, b0), _mm256_mul_pd(a1, b1));
    _mm256_storeu_pd(out + k, _mm256_permute4x64_pd(h, 0xD8));
  }
  scalar::imag_conj_mul(a + k, b + k, out + k, n - k);
}

void cmul(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  const double* pa = dp(a);
  const double* pb = dp(b);
  double* po = dp(out);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d r = complex_mul(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k));
    _mm256_storeu_pd(po + 2 * k, r);
  }
  scalar::cmul(a + k, b + k, out + k, n - k);
}

void modulate(const Complex* psi, const double* g, const double* w, Complex* out, std::size_t n) {
  const double* pp = dp(psi);
  double* po = dp(out);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d gv = _mm256_loadu_pd(g + k);
    const __m256d nw = _mm256_xor_pd(_mm256_loadu_pd(w + k), sign);
    const __m256d lo = _mm256_unpacklo_pd(gv, nw);
    const __m256d hi = _mm256_unpackhi_pd(gv, nw);
    const __m256d b01 = _mm256_permute2f128_pd(lo, hi, 0x20);
    const __m256d b23 = _mm256_permute2f128_pd(lo, hi, 0x31);
    _mm256_storeu_pd(po + 2 * k, complex_mul(_mm256_loadu_pd(pp + 2 * k), b01));
    _mm256_storeu_pd(po + 2 * k + 4, complex_mul(_mm256_loadu_pd(pp + 2 * k + 4), b23));
  }
  scalar::modulate(psi + k, g + k, w + k, out + k, n - k);
}

void mul_real(const Complex* psi, const double* w, Complex* out, std::size_t n) {
  const double* pp = dp(psi);
  double* po = dp(out);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d wv = _mm256_loadu_pd(w + k);
    const __m256d lo = _mm256_unpacklo_pd(wv, wv);
    const __m256d hi = _mm256_unpackhi_pd(wv, wv);
    const __m256d w01 = _mm256_permute2f128_pd(lo, hi, 0x20);
    const __m256d w23 = _mm256_permute2f128_pd(lo, hi, 0x31);
    _mm256_storeu_pd(po + 2 * k, _mm256_mul_pd(_mm256_loadu_pd(pp + 2 * k), w01));
    _mm256_storeu_pd(po + 2 * k + 4, _mm256_mul_pd(_mm256_loadu_pd(pp + 2 * k + 4), w23));
  }
  scalar::mul_real(psi + k, w + k, out + k, n - k);
}

void axpy(const Complex* x, double h, const Complex* y, Complex* out, std::size_t n) {
  const double* px = dp(x);
  const double* py = dp(y);
  double* po = dp(out);
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d r =
        _mm256_add_pd(_mm256_loadu_pd(px + 2 * k), _mm256_mul_pd(hv, _mm256_loadu_pd(py + 2 * k)));
    _mm256_storeu_pd(po + 2 * k, r);
  }
  scalar::axpy(x + k, h, y + k, out + k, n - k);
}

void caxpy(Complex a, const Complex* x, Complex* out, std::size_t n) {
  const double* px = dp(x);
  double* po = dp(out);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    // a * x with a in the left slot reproduces (ar*xr - ai*xi, ar*xi + ai*xr).
    const __m256d prod = complex_mul(av, _mm256_loadu_pd(px + 2 * k));
    _mm256_storeu_pd(po + 2 * k, _mm256_add_pd(_mm256_loadu_pd(po + 2 * k), prod));
  }
  scalar::caxpy(a, x + k, out + k, n - k);
}

void rk4_combine(const Complex* psi, const Complex* k1, const Complex* k2, const Complex* k3,
                 const Complex* k4, double h6, Complex* out, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d hv = _mm256_set1_pd(h6);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const std::size_t o = 2 * k;
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(dp(k1) + o),
                              _mm256_mul_pd(two, _mm256_loadu_pd(dp(k2) + o)));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(dp(k3) + o)));
    s = _mm256_add_pd(s, _mm256_loadu_pd(dp(k4) + o));
    _mm256_storeu_pd(dp(out) + o, _mm256_add_pd(_mm256_loadu_pd(dp(psi) + o), _mm256_mul_pd(hv, s)));
  }
  scalar::rk4_combine(psi + k, k1 + k, k2 + k, k3 + k, k4 + k, h6, out + k, n - k);
}

void ratio_floor(const double* num, const double* rho, double floor, double* out, std::size_t n) {
  const __m256d f = _mm256_set1_pd(floor);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    // max_pd(a, b) returns b unless a > b, matching `rho > floor ? rho : floor`.
    const __m256d r = _mm256_max_pd(_mm256_loadu_pd(rho + k), f);
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_loadu_pd(num + k), r));
  }
  scalar::ratio_floor(num + k, rho + k, floor, out + k, n - k);
}

void ratio_sq_floor(const double* num, const double* rho, double floor, double* out,
                    std::size_t n) {
  const __m256d f = _mm256_set1_pd(floor);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d r = _mm256_max_pd(_mm256_loadu_pd(rho + k), f);
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_loadu_pd(num + k), _mm256_mul_pd(r, r)));
  }
  scalar::ratio_sq_floor(num + k, rho + k, floor, out + k, n - k);
}

}  // namespace nlgauge::kernels::avx2
