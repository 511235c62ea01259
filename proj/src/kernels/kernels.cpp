#include "nlgauge/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace nlgauge::kernels {
namespace {

constexpr KernelTable kScalar{
    Isa::scalar,          "scalar",           scalar::abs2,        scalar::imag_conj_mul,
    scalar::cmul,         scalar::modulate,   scalar::mul_real,    scalar::axpy,
    scalar::caxpy,        scalar::rk4_combine, scalar::ratio_floor, scalar::ratio_sq_floor,
};

#ifdef NLGAUGE_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{
    Isa::avx2,          "avx2",           avx2::abs2,        avx2::imag_conj_mul,
    avx2::cmul,         avx2::modulate,   avx2::mul_real,    avx2::axpy,
    avx2::caxpy,        avx2::rk4_combine, avx2::ratio_floor, avx2::ratio_sq_floor,
};
#endif

bool cpu_has_avx2() {
#if defined(NLGAUGE_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* detect() {
  const char* env = std::getenv("NLGAUGE_SIMD");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return &kScalar;
  if (choice == "avx2" && !available(Isa::avx2)) {
    throw std::runtime_error("NLGAUGE_SIMD=avx2 requested but AVX2 kernels are unavailable");
  }
  if (choice != "auto" && choice != "avx2") {
    throw std::runtime_error("NLGAUGE_SIMD must be one of scalar, avx2, auto; got '" + choice +
                             "'");
  }
  const KernelTable* simd = avx2_table();
  return simd ? simd : &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#ifdef NLGAUGE_HAVE_AVX2_KERNELS
  return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

bool available(Isa isa) {
  return isa == Isa::scalar || avx2_table() != nullptr;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  if (!available(isa)) throw std::runtime_error("requested kernel variant is unavailable");
  current().store(isa == Isa::scalar ? &kScalar : avx2_table(), std::memory_order_release);
}

}  // namespace nlgauge::kernels
