#pragma once
//
// Cauchy-contour representations of Tⁿ and Tⁿ⁺¹ − Tⁿ,
//
//   Tⁿ = binom(n+k,k)⁻¹ (2πi)⁻¹ ∮_{|λ|=r} λ^{n+k} R(λ,T)^{k+1} dλ,
//
// evaluated with the trapezoidal rule on the circle, plus measured norm
// sequences ‖Tⁿ‖₂, ‖Tⁿ⁺¹ − Tⁿ‖₂ and slope fits on them.
//

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "rk/growth_bounds.hpp"
#include "rk/linalg.hpp"
#include "rk/parallel.hpp"

namespace rk {

struct ContourSpec {
  ContourSpec(double radius, std::size_t nodes);
  double radius;
  std::size_t nodes;
};

// r = 1 + 1/n, max(256, 8n) nodes. The node count is a floor; see
// adapt_nodes.
ContourSpec default_power_contour(std::uint64_t n);
// r = 1 + k/(n+1) (1 + 1/(n+1) when k = 0), max(256, 8n) nodes.
ContourSpec default_diff_contour(std::uint64_t n, unsigned k);

// binom(n, k) as a double.
double binomial(std::uint64_t n, unsigned k);

// Max |eigenvalue|; read off the diagonal when T is triangular.
template <typename Derived>
RealOf<Derived> spectral_radius(const Eigen::MatrixBase<Derived>& T) {
  const typename Derived::PlainObject A = T;
  const bool upper = A.template triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0);
  const bool lower = A.template triangularView<Eigen::StrictlyUpper>().toDenseMatrix().isZero(0);
  if (upper || lower) return A.diagonal().cwiseAbs().maxCoeff();
  Eigen::ComplexEigenSolver<typename Derived::PlainObject> es(A, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Raises spec.nodes (doubling) until the trapezoidal aliasing term
// ((m+N)/(m+1))^k (ρ/r)^N drops below 1e-18, for the integrand λ^m R^{k+1}.
// Left unchanged when ρ ≥ r or past 2^20 nodes.
ContourSpec adapt_nodes(ContourSpec spec, double rho, std::uint64_t m, unsigned k);

namespace detail {

inline constexpr std::size_t kContourBlock = 64;

// (1/N) Σ_j w(λ_j) λ_j R(λ_j)^{k+1} over the N nodes λ_j = r e^{2πij/N}.
// Nodes are summed in fixed blocks of kContourBlock, and blocks in index
// order, so the result does not depend on the thread count.
template <typename Derived, typename Weight>
typename Derived::PlainObject contour_sum(const Eigen::MatrixBase<Derived>& T, unsigned k,
                                          const ContourSpec& spec, Weight&& weight, unsigned threads) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  using Real = RealOf<Derived>;
  check_operator(T);
  const Plain A = T;
  const std::size_t N = spec.nodes;
  const std::size_t blocks = (N + kContourBlock - 1) / kContourBlock;
  std::vector<Plain> partial(blocks, Plain::Zero(A.rows(), A.cols()));

  parallel_chunks(blocks, threads, [&](std::size_t b0, std::size_t b1, std::size_t) {
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t end = std::min(N, (b + 1) * kContourBlock);
      for (std::size_t j = b * kContourBlock; j < end; ++j) {
        const Plain R = resolvent(A, weight.node(j));
        Plain term = R;
        for (unsigned i = 0; i < k; ++i) term = term * R;
        partial[b] += weight.factor(j) * term;
      }
    }
  });
  Plain total = Plain::Zero(A.rows(), A.cols());
  for (const auto& p : partial) total += p;
  return total / Scalar(Real(N));
}

// Node λ_j and λ_j^m with the phase reduced exactly as (m·j mod N)/N.
template <typename Real>
struct CircleNodes {
  Real radius;
  std::size_t nodes;

  std::complex<Real> node(std::size_t j) const { return power(j, 1); }
  std::complex<Real> power(std::size_t j, std::uint64_t m) const {
    const auto phase = static_cast<std::size_t>((unsigned __int128)(m % nodes) * j % nodes);
    const Real angle = Real(2) * std::numbers::pi_v<Real> * Real(phase) / Real(nodes);
    return std::polar(std::pow(radius, Real(m)), angle);
  }
};

}  // namespace detail

// Tⁿ from the k-fold integrated contour formula.
template <typename Derived>
typename Derived::PlainObject power_via_contour(const Eigen::MatrixBase<Derived>& T, std::uint64_t n, unsigned k,
                                                const ContourSpec& spec, unsigned threads = 1) {
  using Real = RealOf<Derived>;
  if (n == 0) throw DomainError("power_via_contour needs n >= 1");
  struct Weight {
    detail::CircleNodes<Real> circle;
    std::uint64_t m;
    std::complex<Real> node(std::size_t j) const { return circle.node(j); }
    std::complex<Real> factor(std::size_t j) const { return circle.power(j, m); }
  } w{{Real(spec.radius), spec.nodes}, n + k + 1};
  return detail::contour_sum(T, k, spec, w, threads) / std::complex<Real>(Real(binomial(n + k, k)));
}

// Default contour, with the node count adapted to the spectral radius.
template <typename Derived>
typename Derived::PlainObject power_via_contour(const Eigen::MatrixBase<Derived>& T, std::uint64_t n, unsigned k,
                                                unsigned threads = 1) {
  const auto spec = adapt_nodes(default_power_contour(n), double(spectral_radius(T)), n + k + 1, k);
  return power_via_contour(T, n, k, spec, threads);
}

// Tⁿ⁺¹ − Tⁿ from λ^{n+k}(λ − c) R(λ,T)^{k+1} with c = 1 + k/(n+1), the
// value that makes the two binomial terms cancel to a pure difference.
template <typename Derived>
typename Derived::PlainObject diff_via_contour(const Eigen::MatrixBase<Derived>& T, std::uint64_t n, unsigned k,
                                               const ContourSpec& spec, unsigned threads = 1) {
  using Real = RealOf<Derived>;
  if (n == 0) throw DomainError("diff_via_contour needs n >= 1");
  struct Weight {
    detail::CircleNodes<Real> circle;
    std::uint64_t m;
    Real c;
    std::complex<Real> node(std::size_t j) const { return circle.node(j); }
    std::complex<Real> factor(std::size_t j) const { return circle.power(j, m + 1) - c * circle.power(j, m); }
  } w{{Real(spec.radius), spec.nodes}, n + k + 1, Real(1) + Real(k) / Real(n + 1)};
  return detail::contour_sum(T, k, spec, w, threads) / std::complex<Real>(Real(binomial(n + k + 1, k)));
}

template <typename Derived>
typename Derived::PlainObject diff_via_contour(const Eigen::MatrixBase<Derived>& T, std::uint64_t n, unsigned k,
                                               unsigned threads = 1) {
  const auto spec = adapt_nodes(default_diff_contour(n, k), double(spectral_radius(T)), n + k + 2, k);
  return diff_via_contour(T, n, k, spec, threads);
}

struct SequenceFit {
  std::size_t window_begin = 0;  // first n in the fit window
  std::size_t samples = 0;
  double loglog_slope = 0.0;
  double loglog_r2 = 0.0;
  double semilog_rate = 0.0;  // d log‖·‖ / dn
  double semilog_r2 = 0.0;
  // log y = a + b log n + c log log n
  double log_adjusted_slope = 0.0;
  double log_coefficient = 0.0;
  double log_t = 0.0;
  bool log_detected = false;
  bool exp_decay = false;
};

struct NormSequenceReport {
  std::vector<std::uint64_t> n_values;
  std::vector<double> power_norms;
  std::vector<double> diff_norms;
  double fitted_power_slope = 0.0;
  double fitted_diff_slope = 0.0;
  bool log_detected = false;
  double gelfand_estimate = 0.0;
  SequenceFit power_fit;
  SequenceFit diff_fit;
};

// Thrown when ‖Tⁿ‖ passes 1e300; carries the sequence up to that point.
class SequenceOverflow : public OverflowGuard {
 public:
  SequenceOverflow(std::size_t reached, NormSequenceReport partial);
  const NormSequenceReport& partial() const noexcept { return partial_; }

 private:
  NormSequenceReport partial_;
};

inline constexpr std::uint64_t kMaxSequenceLength = 1'000'000;

// ‖Tⁿ‖₂ and ‖Tⁿ⁺¹ − Tⁿ‖₂ for n = 1..n_max by repeated multiplication, with
// slope fits on n ∈ [max(n_max/4, 16), n_max].
NormSequenceReport norm_sequence(const ComplexMatrix& T, std::uint64_t n_max);

// Fits one sequence; exposed for synthetic data.
SequenceFit fit_sequence(const std::vector<std::uint64_t>& n, const std::vector<double>& norms);

struct RegimeFit {
  GrowthRegime powers;
  GrowthRegime differences;
};

// Minimum fit-window size accepted by fit_regime.
inline constexpr std::size_t kMinFitSamples = 32;

GrowthRegime regime_from_fit(const SequenceFit& fit);
RegimeFit fit_regime(const NormSequenceReport& report);

}  // namespace rk
