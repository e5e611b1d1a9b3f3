#include "rk/rk_condition.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rk/parallel.hpp"

namespace rk {
namespace {

void require_exterior(Complex lambda) {
  if (!is_finite(lambda)) throw DomainError("lambda must be finite");
  if (!(std::abs(lambda) > 1.0)) throw DomainError("lambda must satisfy |lambda| > 1");
}

void require_exponents(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || beta < 0.0)
    throw DomainError("exponents alpha, beta must be finite and non-negative");
}

// |λ|^{α+β−1} / (|λ−1|^α (|λ|−1)^β), evaluated in logs to stay finite near
// the unit circle and for large exponents.
double bound_shape(Complex lambda, double alpha, double beta) {
  const double modulus = std::abs(lambda);
  const double log_value = (alpha + beta - 1.0) * std::log(modulus) -
                           alpha * std::log(std::abs(lambda - 1.0)) -
                           beta * std::log(modulus - 1.0);
  return std::exp(log_value);
}

}  // namespace

int unit_sum_sign(double alpha, double beta) noexcept {
  const double excess = alpha + beta - 1.0;
  if (std::abs(excess) <= kUnitSumTolerance) return 0;
  return excess < 0.0 ? -1 : 1;
}

RKParams::RKParams(double alpha, double beta, double c) : alpha_(alpha), beta_(beta), c_(c) {
  require_exponents(alpha, beta);
  if (!std::isfinite(c) || c < 1.0) throw DomainError("constant C must be finite and >= 1");
}

LambdaGrid::LambdaGrid(std::vector<double> radii, std::vector<double> angles)
    : radii_(std::move(radii)), angles_(std::move(angles)) {
  if (radii_.empty() || angles_.empty()) throw DomainError("lambda grid must be non-empty");
  for (double r : radii_)
    if (!std::isfinite(r) || !(r > 1.0)) throw DomainError("grid radii must be finite and > 1");
  for (double t : angles_)
    if (!std::isfinite(t)) throw DomainError("grid angles must be finite");
}

LambdaGrid LambdaGrid::log_spaced(std::size_t radii, double min_offset, double max_offset,
                                  std::size_t angles) {
  if (radii == 0 || angles == 0) throw DomainError("lambda grid must be non-empty");
  if (!(min_offset > 0.0) || !(max_offset >= min_offset))
    throw DomainError("grid offsets must satisfy 0 < min <= max");
  std::vector<double> r(radii);
  const double lo = std::log(min_offset);
  const double hi = std::log(max_offset);
  for (std::size_t i = 0; i < radii; ++i) {
    const double t = radii == 1 ? 0.0 : double(i) / double(radii - 1);
    r[i] = 1.0 + std::exp(lo + t * (hi - lo));
  }
  std::vector<double> theta(angles);
  for (std::size_t j = 0; j < angles; ++j) theta[j] = 2.0 * std::numbers::pi * double(j) / double(angles);
  return LambdaGrid(std::move(r), std::move(theta));
}

LambdaGrid LambdaGrid::standard() { return log_spaced(48, 1e-6, 9.0, 256); }

LambdaGrid LambdaGrid::scaled(double density) {
  if (!(density > 0.0)) throw DomainError("grid density must be positive");
  const auto radii = static_cast<std::size_t>(std::max(1.0, std::round(48.0 * density)));
  const auto angles = static_cast<std::size_t>(std::max(1.0, std::round(256.0 * density)));
  return log_spaced(radii, 1e-6 / (density * density), 9.0, angles);
}

Complex LambdaGrid::point(std::size_t radius_index, std::size_t angle_index) const {
  return std::polar(radii_.at(radius_index), angles_.at(angle_index));
}

double rk_bound(Complex lambda, const RKParams& params) {
  require_exterior(lambda);
  return params.c() * bound_shape(lambda, params.alpha(), params.beta());
}

double rk_ratio(const ComplexMatrix& T, Complex lambda, double alpha, double beta, Norm norm) {
  require_exterior(lambda);
  require_exponents(alpha, beta);
  return resolvent_norm(T, lambda, norm) / bound_shape(lambda, alpha, beta);
}

MinConstantEstimate estimate_min_c(const ComplexMatrix& T, double alpha, double beta,
                                   const LambdaGrid& grid, Norm norm, unsigned threads) {
  check_operator(T);
  require_exponents(alpha, beta);
  const std::size_t n_angles = grid.angles().size();
  const std::size_t total = grid.size();

  struct Best {
    double value = -1.0;
    std::size_t index = 0;
  };
  std::vector<Best> partial(std::max(1u, threads == 0 ? std::thread::hardware_concurrency() : threads));
  parallel_chunks(total, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Best best;
    for (std::size_t k = begin; k < end; ++k) {
      const double value = rk_ratio(T, grid.point(k / n_angles, k % n_angles), alpha, beta, norm);
      if (value > best.value) best = {value, k};
    }
    partial.at(chunk) = best;
  });

  Best best;
  for (const auto& b : partial)
    if (b.value > best.value) best = b;
  const std::size_t ri = best.index / n_angles;
  const std::size_t ai = best.index % n_angles;
  return {best.value, grid.point(ri, ai), ri, ai};
}

InclusionBounds pointwise_inclusion_bounds(Complex lambda, double alpha, double beta, double c) {
  require_exterior(lambda);
  require_exponents(alpha, beta);
  const double s = alpha + beta;
  return {c * bound_shape(lambda, s, 0.0), c * bound_shape(lambda, alpha, beta),
          c * bound_shape(lambda, 0.0, s)};
}

double torus_constant(const RKParams& params) {
  const double alpha = params.alpha();
  const double beta = params.beta();
  if (beta >= 1.0) throw DomainError("torus constant requires beta < 1");
  if (beta == 0.0) return params.c();
  const double inv = 1.0 / (1.0 - beta);
  double value = std::pow(params.c(), inv) / (std::pow(beta, beta * inv) * (1.0 - beta));
  if (unit_sum_sign(alpha, beta) > 0) value *= std::pow(2.0, alpha * inv);
  return value;
}

double torus_bound(double theta, const RKParams& params) {
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  const double chord = std::abs(2.0 * std::sin(0.5 * theta));  // |e^{iθ} − 1|
  if (chord < 1e-300 || std::remainder(theta, 2.0 * std::numbers::pi) == 0.0)
    throw DomainError("torus bound is undefined at lambda = 1");
  const double constant = torus_constant(params);
  return constant / std::pow(chord, params.alpha() / (1.0 - params.beta()));
}

}  // namespace rk
