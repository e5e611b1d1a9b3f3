#pragma once
//
// Growth of ‖Tⁿ‖ and ‖Tⁿ⁺¹ − Tⁿ‖ for (α,β)-RK operators: the contour
// integrals I_γ, J_γ and their bounds, the k-indexed power/difference
// exponents, and the case-by-case classification of the asymptotic regime.
//

#include <optional>
#include <string>

namespace rk {

enum class GrowthKind { ExpDecay, Poly, PolyLog, Special };

std::string growth_kind_name(GrowthKind kind);

// n^exponent, times log n when has_log. With log_inside_power the log sits
// inside the power: (log n / n)^{−exponent}.
struct GrowthRegime {
  GrowthKind kind = GrowthKind::Poly;
  double exponent = 0.0;
  bool has_log = false;
  bool log_inside_power = false;
  std::string case_label;
  std::string source;
  std::optional<unsigned> optimal_k;
  // Set when the difference bound used the (α+β−1)(k+1)−1 branch, whose
  // exponent rests on the −γ+2 form of the J bound.
  bool j_exponent = false;

  static GrowthRegime exp_decay(std::string case_label, std::string source);
  static GrowthRegime poly(double exponent, std::string case_label, std::string source);
  static GrowthRegime poly_log(double exponent, std::string case_label, std::string source);
};

// Exponents closer than this compare equal.
inline constexpr double kExponentTolerance = 1e-10;
// α(k+1) is compared against 1 or 2 with this slack.
inline constexpr double kThresholdTolerance = 1e-9;
inline constexpr unsigned kMaxK = 64;

// Total order on regimes: ExpDecay < Poly(e) < PolyLog(e) < Poly(e') for
// e < e'. Returns −1, 0 or +1.
int compare_growth(const GrowthRegime& a, const GrowthRegime& b, double tol = kExponentTolerance);

enum class IntegralRegime { Constant, Log, Power };

struct IntegralBound {
  double gamma;
  IntegralRegime regime;
  double constant;
  double power_exponent;  // 0 unless regime == Power

  // Constant: c; Log: c·log(1/(r−1)); Power: c·(r−1)^power_exponent.
  double evaluate(double r) const;
};

// ∫_{−π}^{π} |re^{it} − 1|^{−γ} dt and ∫ |e^{it} − 1| / |re^{it} − 1|^γ dt,
// r ∈ (1, 1.5], γ ≥ 0.
double integral_I_numeric(double r, double gamma);
double integral_J_numeric(double r, double gamma);

IntegralBound integral_bound_I(double r, double gamma);
IntegralBound integral_bound_J(double r, double gamma);

struct BoundExponent {
  double exponent;
  bool has_log;
};

BoundExponent power_bound_exponent(double alpha, double beta, unsigned k);
BoundExponent diff_bound_exponent(double alpha, double beta, unsigned k);

GrowthRegime classify_powers(double alpha, double beta);
GrowthRegime classify_differences(double alpha, double beta);

bool is_ritt(double alpha, double beta);

enum class PairHorn { Inclusion, Ritt, Kreiss };

struct PairWitness {
  PairHorn horn;
  std::string explanation;
};

// Why (α,β)-RK cannot coincide with power boundedness.
PairWitness no_power_bounded_pair_witness(double alpha, double beta);

}  // namespace rk
