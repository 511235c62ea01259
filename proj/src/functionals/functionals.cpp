#include "nlgauge/functionals.hpp"

#include <algorithm>
#include <stdexcept>

#include "nlgauge/kernels.hpp"
#include "nlgauge/spectral.hpp"

namespace nlgauge {

DensityFloor::DensityFloor(double eps) : epsilon_rel(eps) {
  if (!(eps > 0.0 && eps < 1e-3)) {
    throw std::invalid_argument("DensityFloor: epsilon_rel must lie in (0, 1e-3)");
  }
}

const RealArray& RValues::operator[](int j) const {
  switch (j) {
    case 1: return r1;
    case 2: return r2;
    case 3: return r3;
    case 4: return r4;
    case 5: return r5;
    default: throw std::out_of_range("RValues: index must be 1..5");
  }
}

FunctionalEvaluator::FunctionalEvaluator(const Grid& grid)
    : grid_(grid),
      spectral_(Spectral::for_grid(grid)),
      rho_(grid.size()),
      work_(grid.size()),
      rho_hat_(grid.size()),
      accum_(grid.size()),
      num_(grid.size()) {}

FunctionalEvaluator::~FunctionalEvaluator() = default;
FunctionalEvaluator::FunctionalEvaluator(FunctionalEvaluator&&) noexcept = default;
FunctionalEvaluator& FunctionalEvaluator::operator=(FunctionalEvaluator&&) noexcept = default;

void FunctionalEvaluator::evaluate(const Complex* psi, const Complex* psi_hat,
                                   const Request& request, DensityFloor floor) {
  const auto& kt = kernels::active();
  const Spectral& sp = *spectral_;
  const std::size_t n = grid_.size();
  const int d = grid_.dims();

  kt.abs2(psi, rho_.data(), n);
  const double max_rho = *std::max_element(rho_.begin(), rho_.end());
  floor_value_ = floor.epsilon_rel * max_rho;
  floored_points_ = static_cast<std::size_t>(
      std::count_if(rho_.begin(), rho_.end(), [&](double r) { return r < floor_value_; }));

  const auto& want = request.r;
  const bool need_current = request.current || want[0] || want[2] || want[3];
  const bool need_rho_hat = want[1] || want[3] || want[4];
  const bool need_grad_rho = want[3] || want[4];

  if (need_current) {
    current_.resize(d);
    for (int a = 0; a < d; ++a) {
      const auto& k = sp.derivative_wavenumber(a);
      for (std::size_t j = 0; j < n; ++j) {
        work_[j] = Complex(-k[j] * psi_hat[j].imag(), k[j] * psi_hat[j].real());
      }
      sp.inverse(work_.data(), work_.data());
      current_[a].resize(n);
      kt.imag_conj_mul(psi, work_.data(), current_[a].data(), n);
    }
  }

  if (need_rho_hat) {
    for (std::size_t j = 0; j < n; ++j) rho_hat_[j] = Complex(rho_[j], 0.0);
    sp.forward(rho_hat_.data(), rho_hat_.data());
  }

  if (need_grad_rho) {
    grad_rho_.resize(d);
    for (int a = 0; a < d; ++a) {
      const auto& k = sp.derivative_wavenumber(a);
      for (std::size_t j = 0; j < n; ++j) {
        work_[j] = Complex(-k[j] * rho_hat_[j].imag(), k[j] * rho_hat_[j].real());
      }
      sp.inverse(work_.data(), work_.data());
      grad_rho_[a].resize(n);
      for (std::size_t j = 0; j < n; ++j) grad_rho_[a][j] = work_[j].real();
    }
  }

  const double f = floor_value_;

  if (want[0]) {  // R1: div J
    std::fill(accum_.begin(), accum_.end(), Complex(0.0, 0.0));
    for (int a = 0; a < d; ++a) {
      for (std::size_t j = 0; j < n; ++j) work_[j] = Complex(current_[a][j], 0.0);
      sp.forward(work_.data(), work_.data());
      const auto& k = sp.derivative_wavenumber(a);
      for (std::size_t j = 0; j < n; ++j) {
        accum_[j] += Complex(-k[j] * work_[j].imag(), k[j] * work_[j].real());
      }
    }
    sp.inverse(accum_.data(), accum_.data());
    for (std::size_t j = 0; j < n; ++j) num_[j] = accum_[j].real();
    r_[0].resize(n);
    kt.ratio_floor(num_.data(), rho_.data(), f, r_[0].data(), n);
  }

  if (want[1]) {  // R2: lap rho
    const auto& k2 = sp.k_squared();
    for (std::size_t j = 0; j < n; ++j) work_[j] = -k2[j] * rho_hat_[j];
    sp.inverse(work_.data(), work_.data());
    for (std::size_t j = 0; j < n; ++j) num_[j] = work_[j].real();
    r_[1].resize(n);
    kt.ratio_floor(num_.data(), rho_.data(), f, r_[1].data(), n);
  }

  auto dot_into_num = [&](const VectorComponents& u, const VectorComponents& v) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < d; ++a) s += u[a][j] * v[a][j];
      num_[j] = s;
    }
  };

  if (want[2]) {  // R3: J.J
    dot_into_num(current_, current_);
    r_[2].resize(n);
    kt.ratio_sq_floor(num_.data(), rho_.data(), f, r_[2].data(), n);
  }
  if (want[3]) {  // R4: J.grad rho
    dot_into_num(current_, grad_rho_);
    r_[3].resize(n);
    kt.ratio_sq_floor(num_.data(), rho_.data(), f, r_[3].data(), n);
  }
  if (want[4]) {  // R5: grad rho.grad rho
    dot_into_num(grad_rho_, grad_rho_);
    r_[4].resize(n);
    kt.ratio_sq_floor(num_.data(), rho_.data(), f, r_[4].data(), n);
  }
}

RValues compute_R(const WaveFunction& psi, DensityFloor floor) {
  if (max_abs(psi) == 0.0) throw std::invalid_argument("compute_R: psi vanishes identically");
  FunctionalEvaluator eval(psi.grid());
  const ComplexArray hat = spectrum(psi);
  FunctionalEvaluator::Request req;
  req.r = {true, true, true, true, true};
  eval.evaluate(psi.data().data(), hat.data(), req, floor);
  return RValues{eval.r(1), eval.r(2), eval.r(3), eval.r(4), eval.r(5)};
}

KineticDecomposition kinetic_decomposition(const WaveFunction& psi, DensityFloor floor) {
  const std::size_t n = psi.size();
  KineticDecomposition out{ComplexArray(n), ComplexArray(n)};
  if (max_abs(psi) == 0.0) {
    // Both sides vanish for the zero field by convention.
    return out;
  }
  const RValues r = compute_R(psi, floor);
  const ComplexArray lap = spectral_laplacian(psi);
  double max_rho = 0.0;
  for (const auto& z : psi.values()) max_rho = std::max(max_rho, std::norm(z));
  const double f = floor.epsilon_rel * max_rho;
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = std::max(std::norm(psi[j]), f);
    out.lhs[j] = lap[j] * std::conj(psi[j]) / rho;
    out.rhs[j] = Complex(0.5 * r.r2[j] - r.r3[j] - 0.25 * r.r5[j], r.r1[j]);
  }
  return out;
}

}  // namespace nlgauge
