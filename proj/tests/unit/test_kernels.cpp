#include <cstring>
#include <random>

#include "doctest.h"
#include "nlgauge/kernels.hpp"

using namespace nlgauge;
using kernels::KernelTable;

namespace {

struct Inputs {
  ComplexArray a, b, c, d, e;
  RealArray g, w, rho;
};

Inputs random_inputs(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Inputs in;
  for (auto* v : {&in.a, &in.b, &in.c, &in.d, &in.e}) {
    v->resize(n);
    for (auto& z : *v) z = Complex(u(rng), u(rng));
  }
  for (auto* v : {&in.g, &in.w, &in.rho}) {
    v->resize(n);
    for (auto& x : *v) x = u(rng);
  }
  // Some densities below the floor, some exactly at it.
  for (std::size_t i = 0; i < n; i += 3) in.rho[i] = std::abs(in.rho[i]) * 1e-14;
  if (n > 1) in.rho[1] = 1e-13;
  return in;
}

template <class V>
bool bitwise_equal(const V& x, const V& y) {
  return x.size() == y.size() &&
         std::memcmp(x.data(), y.data(), x.size() * sizeof(typename V::value_type)) == 0;
}

// Runs every kernel of both tables on the same inputs and compares bits.
void compare_tables(const KernelTable& s, const KernelTable& v, std::size_t n, unsigned seed) {
  const Inputs in = random_inputs(n, seed);
  RealArray rs(n), rv(n);
  ComplexArray cs(n), cv(n);

  s.abs2(in.a.data(), rs.data(), n);
  v.abs2(in.a.data(), rv.data(), n);
  CHECK(bitwise_equal(rs, rv));

  s.imag_conj_mul(in.a.data(), in.b.data(), rs.data(), n);
  v.imag_conj_mul(in.a.data(), in.b.data(), rv.data(), n);
  CHECK(bitwise_equal(rs, rv));

  s.cmul(in.a.data(), in.b.data(), cs.data(), n);
  v.cmul(in.a.data(), in.b.data(), cv.data(), n);
  CHECK(bitwise_equal(cs, cv));

  s.modulate(in.a.data(), in.g.data(), in.w.data(), cs.data(), n);
  v.modulate(in.a.data(), in.g.data(), in.w.data(), cv.data(), n);
  CHECK(bitwise_equal(cs, cv));

  s.mul_real(in.a.data(), in.w.data(), cs.data(), n);
  v.mul_real(in.a.data(), in.w.data(), cv.data(), n);
  CHECK(bitwise_equal(cs, cv));

  s.axpy(in.a.data(), 0.37, in.b.data(), cs.data(), n);
  v.axpy(in.a.data(), 0.37, in.b.data(), cv.data(), n);
  CHECK(bitwise_equal(cs, cv));

  cs = in.c;
  cv = in.c;
  s.caxpy(Complex(0.3, -1.7), in.a.data(), cs.data(), n);
  v.caxpy(Complex(0.3, -1.7), in.a.data(), cv.data(), n);
  CHECK(bitwise_equal(cs, cv));

  s.rk4_combine(in.a.data(), in.b.data(), in.c.data(), in.d.data(), in.e.data(), 1.0 / 6e3,
                cs.data(), n);
  v.rk4_combine(in.a.data(), in.b.data(), in.c.data(), in.d.data(), in.e.data(), 1.0 / 6e3,
                cv.data(), n);
  CHECK(bitwise_equal(cs, cv));

  s.ratio_floor(in.g.data(), in.rho.data(), 1e-13, rs.data(), n);
  v.ratio_floor(in.g.data(), in.rho.data(), 1e-13, rv.data(), n);
  CHECK(bitwise_equal(rs, rv));

  s.ratio_sq_floor(in.g.data(), in.rho.data(), 1e-13, rs.data(), n);
  v.ratio_sq_floor(in.g.data(), in.rho.data(), 1e-13, rv.data(), n);
  CHECK(bitwise_equal(rs, rv));
}

}  // namespace

TEST_CASE("scalar kernels compute the documented formulas") {
  const KernelTable& s = kernels::scalar_table();
  const std::size_t n = 5;
  const Inputs in = random_inputs(n, 1);
  RealArray r(n);
  ComplexArray c(n);
  s.abs2(in.a.data(), r.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(r[i] == doctest::Approx(std::norm(in.a[i])));
  s.imag_conj_mul(in.a.data(), in.b.data(), r.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(r[i] == doctest::Approx(std::imag(std::conj(in.a[i]) * in.b[i])));
  }
  s.modulate(in.a.data(), in.g.data(), in.w.data(), c.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex want = in.a[i] * Complex(in.g[i], -in.w[i]);
    CHECK(std::abs(c[i] - want) < 1e-13);
  }
  s.ratio_floor(in.g.data(), in.rho.data(), 1e-13, r.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(r[i] == doctest::Approx(in.g[i] / std::max(in.rho[i], 1e-13)));
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  const KernelTable* v = kernels::avx2_table();
  if (!v) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; skipping");
    return;
  }
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 257u, 1000u}) {
    CAPTURE(n);
    compare_tables(kernels::scalar_table(), *v, n, static_cast<unsigned>(n));
  }
}

TEST_CASE("kernel selection") {
  kernels::select(kernels::Isa::scalar);
  CHECK(kernels::active().isa == kernels::Isa::scalar);
  if (kernels::available(kernels::Isa::avx2)) {
    kernels::select(kernels::Isa::avx2);
    CHECK(kernels::active().isa == kernels::Isa::avx2);
  } else {
    CHECK_THROWS(kernels::select(kernels::Isa::avx2));
  }
}
