#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <stdexcept>
#include <vector>

namespace nlgauge {

using Complex = std::complex<double>;

/// Allocator returning 64-byte aligned storage. FFTW plans are created once
/// per grid shape and executed on arbitrary arrays, which is only legal when
/// every array shares the alignment of the planning buffers.
template <class T, std::size_t Alignment = 64>
struct AlignedAllocator {
  using value_type = T;

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Alignment>&) noexcept {}

  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Alignment>;
  };

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Alignment}));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t{Alignment});
  }

  template <class U>
  bool operator==(const AlignedAllocator<U, Alignment>&) const noexcept {
    return true;
  }
};

using ComplexArray = std::vector<Complex, AlignedAllocator<Complex>>;
using RealArray = std::vector<double, AlignedAllocator<double>>;

/// Raised when an integrator step is rejected (blow-up guard, non-finite state).
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two fields defined on different grids are combined.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nlgauge
