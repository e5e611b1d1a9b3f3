#include "rk/operator_zoo.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rk/spectral_regions.hpp"

namespace rk {

ComplexMatrix diag_from_spectrum(const std::vector<Complex>& points) {
  if (points.empty()) throw DomainError("spectrum must be non-empty");
  if (points.size() > std::size_t(kMaxDim)) throw DomainError("at most 512 eigenvalues");
  ComplexMatrix D = ComplexMatrix::Zero(points.size(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!is_finite(points[i])) throw DomainError("eigenvalues must be finite");
    D(i, i) = points[i];
  }
  return D;
}

std::vector<Complex> stolz_spectrum(double sigma, double a, std::size_t count) {
  if (!(sigma > 1.0) || !std::isfinite(sigma)) throw DomainError("stolz spectrum needs sigma > 1");
  if (!(a >= 1.0) || !std::isfinite(a)) throw DomainError("stolz spectrum needs a >= 1");
  if (count == 0 || count > std::size_t(kMaxDim)) throw DomainError("count must lie in [1, 512]");

  std::vector<Complex> points;
  points.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) {
    const double rho = std::ldexp(1.0, -int(j));
    // z(φ) = 1 − ρe^{−iφ}; |z| increases with φ on [0, π], so the gauge
    // |1−z|^a − σ(1−|z|) does too. lo stays on the closed side.
    const StolzClosure closure(sigma, a);
    auto z_at = [&](double phi) { return 1.0 - std::polar(rho, -phi); };
    double lo = 0.0;
    double hi = std::numbers::pi;
    if (closure.gauge(z_at(lo)) > 0.0 || closure.gauge(z_at(hi)) < 0.0)
      throw InfeasibleGeometry("no boundary point with |1-z| = 2^-" + std::to_string(j));
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (closure.gauge(z_at(mid)) <= 0.0 ? lo : hi) = mid;
    }
    points.push_back(z_at(lo));
  }
  return points;
}

ComplexMatrix jordan(Complex rho, std::size_t d) {
  if (d == 0 || d > std::size_t(kMaxDim)) throw DomainError("jordan block size must lie in [1, 512]");
  if (!is_finite(rho)) throw DomainError("eigenvalue must be finite");
  ComplexMatrix J = ComplexMatrix::Zero(d, d);
  J.diagonal().setConstant(rho);
  if (d > 1) J.diagonal(1).setOnes();
  return J;
}

CesaroContext::CesaroContext(double alpha, std::size_t capacity) : alpha_(alpha), capacity_(capacity) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Cesaro order alpha must be > 0");
  k_.push_back(1.0);
  k_next_.push_back(1.0);
}

void CesaroContext::extend(std::size_t n) const {
  if (n > capacity_)
    throw DomainError("Cesaro index " + std::to_string(n) + " exceeds capacity " + std::to_string(capacity_));
  std::lock_guard lock(mutex_);
  for (std::size_t m = k_.size(); m <= n; ++m) {
    const double dm = double(m);
    k_.push_back(k_.back() * (dm - 1.0 + alpha_) / dm);
    k_next_.push_back(k_next_.back() * (dm + alpha_) / dm);
  }
}

double CesaroContext::number(std::size_t n) const {
  extend(n);
  std::lock_guard lock(mutex_);
  return k_[n];
}

double CesaroContext::next_order(std::size_t n) const {
  extend(n);
  std::lock_guard lock(mutex_);
  return k_next_[n];
}

double cesaro_number(const CesaroContext& ctx, std::size_t n) { return ctx.number(n); }

ComplexMatrix cesaro_mean(const ComplexMatrix& T, const CesaroContext& ctx, std::size_t n) {
  check_operator(T);
  if (n > 10'000) throw DomainError("cesaro_mean supports n <= 1e4");
  const auto d = T.rows();
  ComplexMatrix P = ComplexMatrix::Identity(d, d);
  ComplexMatrix S = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j <= n; ++j) {
    S += ctx.number(n - j) * P;
    if (!(S.cwiseAbs().maxCoeff() <= 1e300)) throw OverflowGuard("Cesaro sum exceeded 1e300", j);
    if (j < n) P = T * P;
  }
  return S / ctx.next_order(n);
}

CAlphaEstimate c_alpha_bound_estimate(const ComplexMatrix& T, const CesaroContext& ctx, std::size_t n_max) {
  check_operator(T);
  if (n_max < 8) throw DomainError("c_alpha_bound_estimate needs n_max >= 8");
  const auto d = T.rows();
  const ComplexMatrix I = ComplexMatrix::Identity(d, d);
  // S_n = k_α(n) I + T S_{n−1}
  ComplexMatrix S = I;
  CAlphaEstimate best{1.0, 0, false};
  for (std::size_t n = 1; n <= n_max; ++n) {
    S = T * S;
    S += ctx.number(n) * I;
    const double norm = operator_norm(S) / ctx.next_order(n);
    if (!std::isfinite(norm) || norm > 1e300) throw OverflowGuard("Cesaro mean exceeded 1e300", n - 1);
    if (norm > best.value) {
      best.value = norm;
      best.at_n = n;
    }
  }
  best.still_growing = 4 * best.at_n > 3 * n_max;
  return best;
}

RKParams rk_from_c_alpha(double alpha, double c) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and >= 0");
  if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("(C,alpha) constant must be finite and >= 1");
  return RKParams(0.0, alpha + 1.0, std::max(1.0, std::pow(2.0, alpha) * c));
}

double lp_operator_norm(const ComplexMatrix& T, double p) {
  check_operator(T);
  if (p == 1.0) return operator_norm(T, Norm::L1);
  if (p == 2.0) return operator_norm(T, Norm::L2);
  if (std::isinf(p) && p > 0.0) return operator_norm(T, Norm::LInf);
  throw DomainError("exact operator norms are available for p in {1, 2, inf} only");
}

Interpolation interpolate_rk(double c0, double p0, double c1, double p1, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
  if (!(p0 >= 1.0) || !(p1 >= 1.0)) throw DomainError("exponents p0, p1 must lie in [1, inf]");
  if (!(c0 >= 1.0) || !(c1 >= 1.0) || !std::isfinite(c0) || !std::isfinite(c1))
    throw DomainError("constants must be finite and >= 1");
  const double inv = (1.0 - theta) / p0 + theta / p1;
  const double p = inv > 0.0 ? 1.0 / inv : std::numeric_limits<double>::infinity();
  const double c = c0 == c1 ? c0 : std::pow(c0, 1.0 - theta) * std::pow(c1, theta);
  RKParams params(theta, 1.0 - theta, std::max(1.0, c));
  return {p, params, true};
}

double lp_norm(const ComplexVector& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

LpRatioReport sampled_lp_ratio_check(const ComplexMatrix& T, Complex lambda, double p, double bound,
                                     std::size_t samples, std::uint64_t seed) {
  check_operator(T);
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("sampled check needs p in (1, inf)");
  if (!(std::abs(lambda) > 1.0)) throw DomainError("lambda must satisfy |lambda| > 1");
  if (samples == 0) throw DomainError("need at least one sample");
  const ComplexMatrix R = resolvent(T, lambda);

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> magnitude(1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  ComplexVector x(T.rows());
  LpRatioReport report{0.0, 0, samples, bound, true};
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double m = magnitude(rng);
      x(i) = std::polar(m, phase(rng));
    }
    const double denom = lp_norm(x, p);
    if (!(denom > 0.0)) continue;
    const double ratio = lp_norm(R * x, p) / denom;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = s;
    }
  }
  report.pass = report.max_ratio <= bound * (1.0 + 1e-12);
  return report;
}

}  // namespace rk
