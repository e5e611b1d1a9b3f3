#pragma once
//
// The (α,β)-RK resolvent condition
//
//     ‖R(λ,T)‖ ≤ C |λ|^{α+β−1} / (|λ−1|^α (|λ|−1)^β),   |λ| > 1,
//
// its pointwise evaluation, a grid estimate of the smallest admissible C for
// a concrete matrix, and the boundary constants C_{α,β} that bound the
// resolvent on the unit circle when β < 1.
//

#include <cstddef>
#include <vector>

#include "rk/linalg.hpp"

namespace rk {

// α + β is treated as exactly 1 within this tolerance.
inline constexpr double kUnitSumTolerance = 1e-12;

// Sign of α + β − 1 with the tolerance above: −1, 0 or +1.
int unit_sum_sign(double alpha, double beta) noexcept;

class RKParams {
 public:
  // Throws DomainError unless α, β ≥ 0 are finite and C ≥ 1.
  RKParams(double alpha, double beta, double c);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double c() const noexcept { return c_; }
  double q() const noexcept { return 1.0 / c_; }

 private:
  double alpha_;
  double beta_;
  double c_;
};

// Sample points λ = r e^{iθ} of the exterior of the unit disk.
class LambdaGrid {
 public:
  LambdaGrid(std::vector<double> radii, std::vector<double> angles);

  // 48 radii with r − 1 log-spaced over [1e-6, 9], 256 uniform angles.
  static LambdaGrid standard();
  static LambdaGrid log_spaced(std::size_t radii, double min_offset, double max_offset,
                               std::size_t angles);
  // Density-scaled variant of standard(): counts scale by `density` and the
  // innermost offset r − 1 by density⁻², so the rings approach the unit
  // circle as the grid refines.
  static LambdaGrid scaled(double density);

  const std::vector<double>& radii() const noexcept { return radii_; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  std::size_t size() const noexcept { return radii_.size() * angles_.size(); }
  Complex point(std::size_t radius_index, std::size_t angle_index) const;

 private:
  std::vector<double> radii_;
  std::vector<double> angles_;
};

// C |λ|^{α+β−1} / (|λ−1|^α (|λ|−1)^β); DomainError if |λ| ≤ 1.
double rk_bound(Complex lambda, const RKParams& params);

// Smallest C for which the bound holds at this single λ, using the operator
// norm `norm` (ℓ² unless stated).
double rk_ratio(const ComplexMatrix& T, Complex lambda, double alpha, double beta,
                Norm norm = Norm::L2);

struct MinConstantEstimate {
  double c_hat;
  Complex argmax_lambda;
  std::size_t radius_index;
  std::size_t angle_index;
};

// max of rk_ratio over the grid: a lower bound for the true minimal C.
// Ties go to the lexicographically first (radius index, angle index), so the
// result does not depend on `threads` (0 = hardware concurrency).
MinConstantEstimate estimate_min_c(const ComplexMatrix& T, double alpha, double beta,
                                   const LambdaGrid& grid, Norm norm = Norm::L2,
                                   unsigned threads = 1);

struct InclusionBounds {
  double ritt_like;    // B_{α+β,0}(λ)
  double mid;          // B_{α,β}(λ)
  double kreiss_like;  // B_{0,α+β}(λ)
};

InclusionBounds pointwise_inclusion_bounds(Complex lambda, double alpha, double beta, double c);

// C_{α,β} for β < 1 (DomainError otherwise).
double torus_constant(const RKParams& params);

// C_{α,β} / |e^{iθ} − 1|^{α/(1−β)}; DomainError at θ ≡ 0 (mod 2π) or β ≥ 1.
double torus_bound(double theta, const RKParams& params);

}  // namespace rk
