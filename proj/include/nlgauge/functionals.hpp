#pragma once

#include <array>
#include <memory>

#include "nlgauge/field.hpp"

namespace nlgauge {

class Spectral;

/// Relative density floor: every division by rho uses
/// rho~ = max(rho, epsilon_rel * max rho). The functionals are singular at
/// nodes; the floor turns accidental near-zeros into bounded values.
struct DensityFloor {
  double epsilon_rel = 1e-12;

  DensityFloor() = default;
  explicit DensityFloor(double eps);
};

/// The five hydrodynamic functionals
///   R1 = div J / rho,  R2 = lap rho / rho,  R3 = J.J / rho^2,
///   R4 = J.grad rho / rho^2,  R5 = grad rho.grad rho / rho^2.
struct RValues {
  RealArray r1, r2, r3, r4, r5;

  const RealArray& operator[](int j) const;
};

/// All five functionals with spectral derivatives. Rejects psi == 0.
RValues compute_R(const WaveFunction& psi, DensityFloor floor = {});

/// Both sides of  lap psi / psi = i R1 + R2/2 - R3 - R5/4, pointwise.
/// `lhs` is lap(psi) conj(psi) / rho~ so it stays bounded off the support.
struct KineticDecomposition {
  ComplexArray lhs;
  ComplexArray rhs;
};
KineticDecomposition kinetic_decomposition(const WaveFunction& psi, DensityFloor floor = {});

/// Reusable evaluator for the integrators: owns scratch buffers and computes
/// only the requested functionals. One instance per thread.
class FunctionalEvaluator {
 public:
  struct Request {
    std::array<bool, 5> r{};  // r[j-1] requests R_j
    bool current = false;
  };

  explicit FunctionalEvaluator(const Grid& grid);
  ~FunctionalEvaluator();
  FunctionalEvaluator(FunctionalEvaluator&&) noexcept;
  FunctionalEvaluator& operator=(FunctionalEvaluator&&) noexcept;

  /// `psi_hat` must be the forward transform of `psi`.
  void evaluate(const Complex* psi, const Complex* psi_hat, const Request& request,
                DensityFloor floor);

  const RealArray& rho() const { return rho_; }
  /// Absolute floor value epsilon_rel * max rho of the last evaluation.
  double floor_value() const { return floor_value_; }
  std::size_t floored_points() const { return floored_points_; }
  const RealArray& r(int j) const { return r_[j - 1]; }
  const VectorComponents& current() const { return current_; }

 private:
  Grid grid_;
  std::shared_ptr<const Spectral> spectral_;
  RealArray rho_;
  double floor_value_ = 0.0;
  std::size_t floored_points_ = 0;
  std::array<RealArray, 5> r_;
  VectorComponents current_;
  VectorComponents grad_rho_;
  ComplexArray work_, rho_hat_, accum_;
  RealArray num_;
};

}  // namespace nlgauge
