#include "rk/growth_bounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rk/errors.hpp"
#include "rk/rk_condition.hpp"

namespace rk {
namespace {

constexpr double kPi = std::numbers::pi;

void check_params(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw DomainError("alpha and beta must be finite and non-negative");
}

void check_integral_args(double r, double gamma) {
  if (!(r > 1.0 && r <= 1.5)) throw DomainError("integral bounds need r in (1, 1.5]");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be finite and >= 0");
}

// 2∫_0^π f, split where the integrand changes scale near t = 0.
template <typename F>
double symmetric_integral(double r, F&& f) {
  using boost::math::quadrature::gauss_kronrod;
  const double d = r - 1.0;
  std::array<double, 5> cuts{0.0, d, 10.0 * d, 100.0 * d, kPi};
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double b = std::min(cuts[i], kPi);
    if (b <= prev) continue;
    double err = 0.0;
    total += gauss_kronrod<double, 15>::integrate(f, prev, b, 15, 1e-12, &err);
    prev = b;
  }
  return 2.0 * total;
}

// |re^{it} − 1|² written to avoid cancellation near t = 0.
double distance_sq(double r, double t) {
  const double s = std::sin(0.5 * t);
  return (r - 1.0) * (r - 1.0) + 4.0 * r * s * s;
}

int cmp(double a, double b, double tol) { return a < b - tol ? -1 : (a > b + tol ? 1 : 0); }

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

// Power exponent at each k ≤ cap, keeping the first minimizer.
template <typename Exponent>
GrowthRegime min_over_k(double alpha, double beta, Exponent&& bound, double j_threshold) {
  GrowthRegime best;
  bool have = false;
  for (unsigned k = 0; k <= kMaxK; ++k) {
    const auto [e, log] = bound(alpha, beta, k);
    GrowthRegime cand = log ? GrowthRegime::poly_log(e, "", "") : GrowthRegime::poly(e, "", "");
    cand.optimal_k = k;
    cand.j_exponent = alpha * (k + 1) > j_threshold + kThresholdTolerance;
    if (!have || compare_growth(cand, best) < 0) {
      best = cand;
      have = true;
    }
  }
  return best;
}

}  // namespace

std::string growth_kind_name(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::ExpDecay:
      return "ExpDecay";
    case GrowthKind::Poly:
      return "Poly";
    case GrowthKind::PolyLog:
      return "PolyLog";
    case GrowthKind::Special:
      return "Special";
  }
  return "Special";
}

GrowthRegime GrowthRegime::exp_decay(std::string case_label, std::string source) {
  GrowthRegime g;
  g.kind = GrowthKind::ExpDecay;
  g.case_label = std::move(case_label);
  g.source = std::move(source);
  return g;
}

GrowthRegime GrowthRegime::poly(double exponent, std::string case_label, std::string source) {
  GrowthRegime g;
  g.kind = GrowthKind::Poly;
  g.exponent = exponent;
  g.case_label = std::move(case_label);
  g.source = std::move(source);
  return g;
}

GrowthRegime GrowthRegime::poly_log(double exponent, std::string case_label, std::string source) {
  GrowthRegime g = poly(exponent, std::move(case_label), std::move(source));
  g.kind = GrowthKind::PolyLog;
  g.has_log = true;
  return g;
}

int compare_growth(const GrowthRegime& a, const GrowthRegime& b, double tol) {
  const bool da = a.kind == GrowthKind::ExpDecay;
  const bool db = b.kind == GrowthKind::ExpDecay;
  if (da || db) return int(!da) - int(!db);
  if (int c = cmp(a.exponent, b.exponent, tol); c != 0) return c;
  // Power of log n multiplying n^exponent.
  auto log_power = [](const GrowthRegime& g) {
    if (!g.has_log) return 0.0;
    return g.log_inside_power ? -g.exponent : 1.0;
  };
  return cmp(log_power(a), log_power(b), tol);
}

double IntegralBound::evaluate(double r) const {
  switch (regime) {
    case IntegralRegime::Constant:
      return constant;
    case IntegralRegime::Log:
      return constant * std::log(1.0 / (r - 1.0));
    case IntegralRegime::Power:
      return constant * std::pow(r - 1.0, power_exponent);
  }
  return constant;
}

double integral_I_numeric(double r, double gamma) {
  check_integral_args(r, gamma);
  return symmetric_integral(r, [&](double t) { return std::pow(distance_sq(r, t), -0.5 * gamma); });
}

double integral_J_numeric(double r, double gamma) {
  check_integral_args(r, gamma);
  return symmetric_integral(r, [&](double t) {
    return 2.0 * std::abs(std::sin(0.5 * t)) * std::pow(distance_sq(r, t), -0.5 * gamma);
  });
}

IntegralBound integral_bound_I(double r, double gamma) {
  check_integral_args(r, gamma);
  if (gamma < 1.0) return {gamma, IntegralRegime::Constant, std::pow(2.0, 1.0 - gamma) * kPi / (1.0 - gamma), 0.0};
  if (gamma == 1.0)
    return {gamma, IntegralRegime::Log, kPi * std::log(4.0 + std::sqrt(17.0)) / std::numbers::ln2, 0.0};
  return {gamma, IntegralRegime::Power, kPi * gamma / (gamma - 1.0), 1.0 - gamma};
}

IntegralBound integral_bound_J(double r, double gamma) {
  check_integral_args(r, gamma);
  const double quarter = kPi * kPi / 4.0;
  if (gamma < 2.0) {
    const double h = 1.0 - 0.5 * gamma;
    return {gamma, IntegralRegime::Constant, quarter * std::pow(4.25, h) / h, 0.0};
  }
  if (gamma == 2.0) return {gamma, IntegralRegime::Log, quarter * std::log(17.0) / std::numbers::ln2, 0.0};
  return {gamma, IntegralRegime::Power, kPi * kPi / (2.0 * (gamma - 2.0)), 2.0 - gamma};
}

BoundExponent power_bound_exponent(double alpha, double beta, unsigned k) {
  check_params(alpha, beta);
  const double t = alpha * (k + 1);
  const double low = k * (beta - 1.0) + beta;
  switch (cmp(t, 1.0, kThresholdTolerance)) {
    case -1:
      return {low, false};
    case 0:
      return {low, true};
    default:
      return {(alpha + beta - 1.0) * (k + 1), false};
  }
}

BoundExponent diff_bound_exponent(double alpha, double beta, unsigned k) {
  check_params(alpha, beta);
  const double t = alpha * (k + 1);
  const double low = k * (beta - 1.0) + beta;
  switch (cmp(t, 2.0, kThresholdTolerance)) {
    case -1:
      return {low, false};
    case 0:
      return {low, true};
    default:
      return {(alpha + beta - 1.0) * (k + 1) - 1.0, false};
  }
}

GrowthRegime classify_powers(double alpha, double beta) {
  check_params(alpha, beta);
  const double eps = kUnitSumTolerance;
  const int sum = unit_sum_sign(alpha, beta);

  if (alpha > 1.0 + eps) {
    auto g = GrowthRegime::poly(alpha + beta - 1.0, "8", "alpha > 1: k = 0 bound (alpha+beta-1)(k+1)");
    g.optimal_k = 0;
    return g;
  }
  if (alpha >= 1.0 - eps) {
    if (beta <= eps) {
      auto g = GrowthRegime::poly(0.0, "6", "alpha = 1, beta = 0: Ritt, power bounded (k = 1)");
      g.optimal_k = 1;
      return g;
    }
    auto g = GrowthRegime::poly_log(beta, "7", "alpha = 1, beta > 0: k = 0 bound with logarithm");
    g.optimal_k = 0;
    return g;
  }
  if (sum < 0)
    return GrowthRegime::exp_decay("1", "alpha < 1, alpha+beta < 1: k(beta-1)+beta < 0 for large k; spectrum in the open disk");
  if (alpha <= eps) {
    auto g = GrowthRegime::poly(beta, "2", "alpha = 0, beta >= 1: k = 0 bound n^beta");
    g.optimal_k = 0;
    return g;
  }
  if (sum == 0) {
    unsigned k = 0;
    while (alpha * (k + 1) <= 1.0 + kThresholdTolerance) ++k;
    auto g = GrowthRegime::poly(0.0, "3", "0 < alpha < 1, alpha+beta = 1: power bounded");
    g.optimal_k = k;
    return g;
  }
  if (beta >= 1.0) {
    auto g = GrowthRegime::poly(beta, "5", "0 < alpha < 1, beta >= 1: k = 0 bound n^beta");
    g.optimal_k = 0;
    return g;
  }

  // 0 < α < 1, 0 < β < 1, α + β > 1.
  const double inv = 1.0 / alpha;
  const double ratio = (alpha + beta - 1.0) / alpha;
  GrowthRegime g;
  if (std::abs(inv - std::round(inv)) < kThresholdTolerance) {
    const double m = std::round(inv) - 1.0;
    g = GrowthRegime::poly_log(ratio, "4.1", "alpha = 1/(m+1) with m = " + fmt(m) + ": k = m bound with logarithm");
    g.optimal_k = unsigned(m);
  } else {
    const double fl = std::floor(inv);
    const double eta = inv - fl;
    if (std::abs(eta - ratio) <= kThresholdTolerance) {
      g = GrowthRegime::poly(fl * (beta - 1.0) + 1.0, "4.2.2",
                             "eta = (alpha+beta-1)/alpha = " + fmt(eta) +
                                 ": both case 4.2 branches agree, reported log-free");
      g.optimal_k = unsigned(fl) - 1;
    } else if (eta > ratio) {
      g = GrowthRegime::poly((alpha + beta - 1.0) * (fl + 1.0), "4.2.1",
                             "eta = " + fmt(eta) + " >= (alpha+beta-1)/alpha: k = floor(1/alpha)");
      g.optimal_k = unsigned(fl);
    } else {
      g = GrowthRegime::poly(fl * (beta - 1.0) + 1.0, "4.2.2",
                             "eta = " + fmt(eta) + " <= (alpha+beta-1)/alpha: k = floor(1/alpha) - 1");
      g.optimal_k = unsigned(fl) - 1;
    }
  }
  if (*g.optimal_k > kMaxK) {
    GrowthRegime capped = min_over_k(alpha, beta, power_bound_exponent, 1.0);
    capped.j_exponent = false;
    capped.case_label = g.case_label;
    capped.source = g.source + "; optimal k exceeds the search cap " + std::to_string(kMaxK) +
                    ", best bound with k <= cap reported";
    return capped;
  }
  return g;
}

GrowthRegime classify_differences(double alpha, double beta) {
  check_params(alpha, beta);
  const int sum = unit_sum_sign(alpha, beta);
  if (sum < 0)
    return GrowthRegime::exp_decay("1", "alpha+beta < 1: powers decay exponentially, hence so do differences");

  GrowthRegime best = min_over_k(alpha, beta, diff_bound_exponent, 2.0);
  best.case_label = "k-min";
  best.source = "minimum over k <= " + std::to_string(kMaxK) + " of the k-indexed difference bound";
  if (best.j_exponent) best.source += " (exponent (alpha+beta-1)(k+1)-1 uses the J bound with (r-1)^(-gamma+2))";

  if (beta < 1.0 && sum >= 0) {
    const double p = (1.0 - beta) / alpha;
    auto improved = GrowthRegime::poly_log(-p, "improved", "beta < 1, alpha+beta >= 1: (log n / n)^((1-beta)/alpha)");
    improved.log_inside_power = true;
    if (compare_growth(improved, best) < 0) best = improved;
  }
  if (sum == 0 && alpha > kUnitSumTolerance) {
    auto free = GrowthRegime::poly(-1.0, "log-free", "alpha+beta = 1, alpha > 0: Ritt, O(1/n)");
    if (compare_growth(free, best) < 0) best = free;
  }
  return best;
}

bool is_ritt(double alpha, double beta) {
  check_params(alpha, beta);
  return unit_sum_sign(alpha, beta) == 0 && alpha > kUnitSumTolerance;
}

PairWitness no_power_bounded_pair_witness(double alpha, double beta) {
  check_params(alpha, beta);
  if (std::abs(beta - 1.0) <= kUnitSumTolerance)
    return {PairHorn::Kreiss,
            "beta = 1 contains the Kreiss operators; equality would make every Kreiss operator power bounded, "
            "which fails"};
  if (unit_sum_sign(alpha, beta) != 0)
    return {PairHorn::Inclusion,
            "alpha+beta != 1: the class is either strictly inside the Ritt operators or contains operators "
            "that are not power bounded"};
  return {PairHorn::Ritt,
          "alpha+beta = 1 with beta < 1 forces the Ritt condition; equality would make every power bounded "
          "operator Ritt, which fails"};
}

}  // namespace rk
