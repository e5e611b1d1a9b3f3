#pragma once
//
// Test operators with known spectra, Cesàro numbers and (C,α) means, and the
// finite-dimensional ℓᵖ interpolation check.
//

#include <cstdint>
#include <mutex>
#include <vector>

#include "rk/linalg.hpp"
#include "rk/rk_condition.hpp"

namespace rk {

ComplexMatrix diag_from_spectrum(const std::vector<Complex>& points);

// Points z_j on |1−z|^a = σ(1−|z|), Im z > 0, with |1−z_j| = 2^{−j},
// j = 1..count.
std::vector<Complex> stolz_spectrum(double sigma, double a, std::size_t count);

// d×d Jordan block with eigenvalue rho.
ComplexMatrix jordan(Complex rho, std::size_t d);

// Cesàro numbers k_α(n) = Γ(n+α)/(Γ(α)Γ(n+1)) and k_{α+1}(n), both by the
// ratio recurrence k(n) = k(n−1)(n−1+α)/n. The cache grows on demand up to
// `capacity`; safe to share between threads.
class CesaroContext {
 public:
  explicit CesaroContext(double alpha, std::size_t capacity = 10'000);

  double alpha() const noexcept { return alpha_; }
  std::size_t capacity() const noexcept { return capacity_; }

  // k_α(n)
  double number(std::size_t n) const;
  // k_{α+1}(n)
  double next_order(std::size_t n) const;

 private:
  void extend(std::size_t n) const;

  double alpha_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  mutable std::vector<double> k_;
  mutable std::vector<double> k_next_;
};

double cesaro_number(const CesaroContext& ctx, std::size_t n);

// M(n) = k_{α+1}(n)⁻¹ Σ_{j=0}^{n} k_α(n−j) T^j, n ≤ 10⁴.
ComplexMatrix cesaro_mean(const ComplexMatrix& T, const CesaroContext& ctx, std::size_t n);

struct CAlphaEstimate {
  double value;          // max_{n ≤ n_max} ‖M(n)‖₂
  std::size_t at_n;      // where the max was attained
  bool still_growing;    // max attained in the last quarter of the range
};

CAlphaEstimate c_alpha_bound_estimate(const ComplexMatrix& T, const CesaroContext& ctx, std::size_t n_max);

// (C,α) bounded with constant c ⇒ (0, α+1)-RK with constant max(1, 2^α c).
RKParams rk_from_c_alpha(double alpha, double c);

// p ∈ {1, 2, +inf}.
double lp_operator_norm(const ComplexMatrix& T, double p);

struct Interpolation {
  double p;
  RKParams params;
  bool ritt;
};

// Kreiss with constant c0 on ℓ^{p0} and Ritt with constant c1 on ℓ^{p1}
// give (θ, 1−θ)-RK on ℓ^p, 1/p = (1−θ)/p0 + θ/p1, constant c0^{1−θ} c1^θ.
Interpolation interpolate_rk(double c0, double p0, double c1, double p1, double theta);

struct LpRatioReport {
  double max_ratio;
  std::size_t argmax;
  std::size_t samples;
  double bound;
  bool pass;  // max_ratio ≤ bound(1 + 1e-12)
};

// max over random x of ‖R(λ,T)x‖_p / ‖x‖_p. Entries have Exp(1) modulus and
// uniform phase. Can falsify the bound, never certify it.
LpRatioReport sampled_lp_ratio_check(const ComplexMatrix& T, Complex lambda, double p, double bound,
                                     std::size_t samples, std::uint64_t seed);

double lp_norm(const ComplexVector& x, double p);

}  // namespace rk
