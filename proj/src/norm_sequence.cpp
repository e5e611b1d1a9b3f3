#include "rk/contour_powers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rk/regression.hpp"

namespace rk {

ContourSpec::ContourSpec(double radius_, std::size_t nodes_) : radius(radius_), nodes(nodes_) {
  if (!(radius > 1.0) || !std::isfinite(radius)) throw DomainError("contour radius must be finite and > 1");
  if (nodes < 64) throw DomainError("contour needs at least 64 nodes");
}

namespace {
std::size_t default_nodes(std::uint64_t n) { return std::max<std::size_t>(256, 8 * n); }
}  // namespace

ContourSpec default_power_contour(std::uint64_t n) {
  if (n == 0) throw DomainError("n must be >= 1");
  return {1.0 + 1.0 / double(n), default_nodes(n)};
}

ContourSpec default_diff_contour(std::uint64_t n, unsigned k) {
  if (n == 0) throw DomainError("n must be >= 1");
  const double shift = k == 0 ? 1.0 / double(n + 1) : double(k) / double(n + 1);
  return {1.0 + shift, default_nodes(n)};
}

ContourSpec adapt_nodes(ContourSpec spec, double rho, std::uint64_t m, unsigned k) {
  if (!(rho < spec.radius)) return spec;
  const double log_ratio = std::log(rho / spec.radius);
  auto log_alias = [&](double N) {
    return double(k) * std::log((double(m) + N) / double(m + 1)) + N * log_ratio;
  };
  const double target = std::log(1e-18);
  while (log_alias(double(spec.nodes)) > target && spec.nodes < (std::size_t(1) << 20)) spec.nodes *= 2;
  return spec;
}

double binomial(std::uint64_t n, unsigned k) {
  if (k > n) return 0.0;
  double b = 1.0;
  for (unsigned i = 1; i <= k; ++i) b = b * double(n - k + i) / double(i);
  return b;
}

SequenceOverflow::SequenceOverflow(std::size_t reached, NormSequenceReport partial)
    : OverflowGuard("norm of T^n exceeded 1e300 after n = " + std::to_string(reached), reached),
      partial_(std::move(partial)) {}

SequenceFit fit_sequence(const std::vector<std::uint64_t>& n, const std::vector<double>& norms) {
  if (n.size() != norms.size()) throw DomainError("sequence lengths differ");
  SequenceFit fit;
  if (n.empty()) return fit;
  const std::uint64_t n_max = n.back();
  fit.window_begin = std::max<std::uint64_t>(n_max / 4, 16);

  std::vector<double> ln, lnln, nn, y;
  bool zero = false;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < fit.window_begin) continue;
    ++fit.samples;
    if (!(norms[i] > 0.0)) {
      zero = true;
      continue;
    }
    nn.push_back(double(n[i]));
    ln.push_back(std::log(double(n[i])));
    lnln.push_back(std::log(std::log(double(n[i]))));
    y.push_back(std::log(norms[i]));
  }
  if (zero) {
    fit.exp_decay = true;
    return fit;
  }
  if (y.size() < 4) return fit;

  const LinearFit loglog = fit_line(ln, y);
  fit.loglog_slope = loglog.slope;
  fit.loglog_r2 = loglog.r2;
  const LinearFit semilog = fit_line(nn, y);
  fit.semilog_rate = semilog.slope;
  fit.semilog_r2 = semilog.r2;

  Eigen::MatrixXd X(y.size(), 3);
  Eigen::VectorXd Y(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = ln[i];
    X(i, 2) = lnln[i];
    Y(i) = y[i];
  }
  try {
    const LeastSquares ls = least_squares(X, Y);
    fit.log_adjusted_slope = ls.coef(1);
    fit.log_coefficient = ls.coef(2);
    const double se = ls.std_error(2);
    fit.log_t = se > 0.0 ? std::abs(fit.log_coefficient) / se
                         : (fit.log_coefficient != 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    fit.log_detected = fit.log_t > 4.0 && fit.log_coefficient >= 0.5;
  } catch (const InsufficientData&) {
    fit.log_adjusted_slope = fit.loglog_slope;
  }

  const double drop = y.back() - y.front();
  fit.exp_decay = fit.semilog_r2 >= 0.999 && fit.semilog_r2 >= fit.loglog_r2 && drop <= -std::log(100.0);
  return fit;
}

NormSequenceReport norm_sequence(const ComplexMatrix& T, std::uint64_t n_max) {
  check_operator(T);
  if (n_max == 0 || n_max > kMaxSequenceLength) throw DomainError("n_max must lie in [1, 1e6]");

  NormSequenceReport report;
  report.n_values.reserve(n_max);
  report.power_norms.reserve(n_max);
  report.diff_norms.reserve(n_max);

  ComplexMatrix P = T;
  ComplexMatrix next;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    next.noalias() = T * P;
    const double pn = operator_norm(P);
    const double dn = operator_norm(next - P);
    if (!(pn <= 1e300) || !std::isfinite(dn)) throw SequenceOverflow(n - 1, report);
    report.n_values.push_back(n);
    report.power_norms.push_back(pn);
    report.diff_norms.push_back(dn);
    P.swap(next);
  }

  report.power_fit = fit_sequence(report.n_values, report.power_norms);
  report.diff_fit = fit_sequence(report.n_values, report.diff_norms);
  report.fitted_power_slope = report.power_fit.loglog_slope;
  report.fitted_diff_slope = report.diff_fit.loglog_slope;
  report.log_detected = report.power_fit.log_detected;
  const double last = report.power_norms.back();
  report.gelfand_estimate = last > 0.0 ? std::exp(std::log(last) / double(n_max)) : 0.0;
  return report;
}

GrowthRegime regime_from_fit(const SequenceFit& fit) {
  if (fit.samples < kMinFitSamples)
    throw InsufficientData("fit window has " + std::to_string(fit.samples) + " samples, need " +
                           std::to_string(kMinFitSamples));
  const std::string source = "empirical fit over n >= " + std::to_string(fit.window_begin);
  if (fit.exp_decay) return GrowthRegime::exp_decay("fit", source + ": log-linear decay");
  if (fit.loglog_r2 < 0.9 && fit.semilog_r2 < 0.9) {
    GrowthRegime g = GrowthRegime::poly(fit.loglog_slope, "fit", source + ": neither power nor exponential law fits");
    g.kind = GrowthKind::Special;
    return g;
  }
  if (fit.log_detected)
    return GrowthRegime::poly_log(fit.log_adjusted_slope, "fit", source + ": log n factor detected");
  return GrowthRegime::poly(fit.loglog_slope, "fit", source);
}

RegimeFit fit_regime(const NormSequenceReport& report) {
  return {regime_from_fit(report.power_fit), regime_from_fit(report.diff_fit)};
}

}  // namespace rk
