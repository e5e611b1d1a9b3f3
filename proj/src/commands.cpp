#include "rk/commands.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rk/contour_powers.hpp"
#include "rk/growth_bounds.hpp"
#include "rk/operator_zoo.hpp"
#include "rk/spectral_regions.hpp"
#include "rk/svg.hpp"

namespace rk {
namespace {

void check_exponent(const char* name, double v) {
  if (!std::isfinite(v) || v < 0.0 || v > kMaxCliExponent)
    throw UsageError(std::string(name) + " must lie in [0, 8]");
}

void check_exponents(double alpha, double beta) {
  check_exponent("alpha", alpha);
  check_exponent("beta", beta);
}

void check_constant(double c) {
  if (!std::isfinite(c) || c < 1.0) throw UsageError("c must be finite and >= 1");
}

Json string_array(const std::vector<std::string>& items) {
  Json a = Json::array();
  for (const auto& s : items) a.push_back(s);
  return a;
}

// Closing fields every report carries.
void finish(Json& j, const std::string& case_label, const std::vector<std::string>& provenance,
            const std::vector<std::string>& flags, const RunSettings& run) {
  j["case"] = case_label.empty() ? Json(nullptr) : Json(case_label);
  j["provenance"] = string_array(provenance);
  j["ledger_flags"] = string_array(flags);
  j["seed"] = run.seed;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void append_unique(std::vector<std::string>& to, const std::vector<std::string>& from) {
  for (const auto& f : from)
    if (std::find(to.begin(), to.end(), f) == to.end()) to.push_back(f);
}

std::vector<Complex> diagonal_of(const ComplexMatrix& T) {
  std::vector<Complex> d(T.rows());
  for (Eigen::Index i = 0; i < T.rows(); ++i) d[i] = T(i, i);
  return d;
}

// Frobenius error over max(1, ‖exact‖_F): relative for growing sequences,
// absolute once Tⁿ has decayed below the rounding level of the contour sum.
double scaled_error(const ComplexMatrix& approx, const ComplexMatrix& exact) {
  return (approx - exact).norm() / std::max(1.0, exact.norm());
}

// Observed growth no faster than the predicted regime, allowing 0.1 in the
// slope plus the local slope of any log factor.
bool within_bound(const SequenceFit& fit, double gelfand, const GrowthRegime& predicted) {
  if (fit.exp_decay) return true;
  if (predicted.kind == GrowthKind::ExpDecay) return gelfand < 1.0;
  double allowance = 0.1;
  if (predicted.has_log && fit.window_begin > 1) {
    const double log_power = predicted.log_inside_power ? -predicted.exponent : 1.0;
    allowance += log_power / std::log(double(fit.window_begin));
  }
  return fit.loglog_slope <= predicted.exponent + allowance;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "svg") return Format::Svg;
  throw UsageError("unknown format '" + name + "' (json, csv or svg)");
}

bool is_triangular(const ComplexMatrix& T) {
  bool upper = true;
  bool lower = true;
  for (Eigen::Index j = 0; j < T.cols(); ++j)
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      if (i > j && T(i, j) != Complex(0.0)) upper = false;
      if (i < j && T(i, j) != Complex(0.0)) lower = false;
    }
  return upper || lower;
}

CommandOutput cmd_classify(const ClassifyOptions& opt) {
  check_exponents(opt.alpha, opt.beta);
  if (opt.c) check_constant(*opt.c);

  const GrowthRegime powers = classify_powers(opt.alpha, opt.beta);
  const GrowthRegime diffs = classify_differences(opt.alpha, opt.beta);
  const PairWitness witness = no_power_bounded_pair_witness(opt.alpha, opt.beta);

  Json j;
  j["command"] = "classify";
  j["alpha"] = opt.alpha;
  j["beta"] = opt.beta;
  if (opt.c) j["c"] = *opt.c;
  j["kind"] = growth_kind_name(powers.kind);
  j["exponent"] = real_json(powers.exponent);
  j["has_log"] = powers.has_log;
  j["optimal_k"] = powers.optimal_k ? Json(*powers.optimal_k) : Json(nullptr);
  j["powers"] = regime_json(powers);
  j["differences"] = regime_json(diffs);
  j["is_ritt"] = is_ritt(opt.alpha, opt.beta);
  static const char* horns[] = {"inclusion", "ritt", "kreiss"};
  j["power_bounded_pair"] = {{"horn", horns[int(witness.horn)]}, {"explanation", witness.explanation}};

  std::vector<std::string> provenance{"powers: " + powers.source, "differences: " + diffs.source};
  std::vector<std::string> flags = regime_flags(powers);
  append_unique(flags, regime_flags(diffs));
  if (opt.c) {
    const RKParams params(opt.alpha, opt.beta, *opt.c);
    const RegionDescriptor region = region_for(params);
    j["region"] = region_json(region);
    if (opt.beta < 1.0) {
      j["torus_constant"] = torus_constant(params);
      j["kreiss_floor_ok"] = kreiss_floor_ok(params);
    }
    provenance.push_back("region: " + region.provenance);
  }
  finish(j, powers.case_label, provenance, flags, opt.run);
  return {kExitOk, dump(j), "", {}};
}

CommandOutput cmd_region(const RegionOptions& opt) {
  check_exponents(opt.alpha, opt.beta);
  check_constant(opt.c);
  if (opt.points < 16) throw UsageError("--points must be at least 16");
  const RKParams params(opt.alpha, opt.beta, opt.c);
  CommandOutput out;
  if (opt.beta >= 1.0)
    out.warnings.push_back("beta >= 1: the region is the whole closed unit disk (no localization)");

  if (opt.format == Format::Svg) {
    out.body = render_region_svg(params, opt.points, opt.run.threads);
    return out;
  }
  const RegionDescriptor region = region_for(params);
  const BoundaryTrace trace = boundary_trace(region.shape, opt.points, opt.run.threads);
  if (opt.format == Format::Csv) {
    out.body = boundary_csv(trace);
    return out;
  }
  Json j;
  j["command"] = "region";
  j["alpha"] = opt.alpha;
  j["beta"] = opt.beta;
  j["c"] = opt.c;
  j["region"] = region_json(region);
  j["center"] = complex_json(trace.center);
  Json pts = Json::array();
  for (const auto& p : trace.points) pts.push_back(complex_json(p.z));
  j["boundary"] = pts;
  finish(j, classify_powers(opt.alpha, opt.beta).case_label, {region.provenance}, {}, opt.run);
  out.body = dump(j);
  return out;
}

LambdaGrid GridOptions::build() const {
  if (radii == 0 || angles == 0) throw UsageError("grid counts must be positive");
  if (!(min_offset > 0.0) || !(max_offset >= min_offset) || !std::isfinite(max_offset))
    throw UsageError("grid offsets must satisfy 0 < min <= max");
  return LambdaGrid::log_spaced(radii, min_offset, max_offset, angles);
}

GridOptions GridOptions::coarse() const {
  GridOptions g = *this;
  g.radii = std::max<std::size_t>(1, radii / 4);
  g.angles = std::max<std::size_t>(1, angles / 4);
  g.min_offset = std::min(max_offset, min_offset * 16.0);
  return g;
}

CommandOutput cmd_verify(const VerifyOptions& opt) {
  check_exponents(opt.alpha, opt.beta);
  if (!(opt.safety >= 1.0) || !std::isfinite(opt.safety)) throw UsageError("--safety must be >= 1");
  if (!(opt.tol >= 0.0) || !std::isfinite(opt.tol)) throw UsageError("--tol must be >= 0");
  check_operator(opt.matrix);
  const LambdaGrid grid = opt.grid.build();

  CommandOutput out;
  const MinConstantEstimate est =
      estimate_min_c(opt.matrix, opt.alpha, opt.beta, grid, Norm::L2, opt.run.threads);
  const double c_used = std::max(1.0, opt.safety * est.c_hat);
  const RKParams params(opt.alpha, opt.beta, c_used);

  std::vector<std::string> provenance;
  std::vector<std::string> flags;
  Json j;
  j["command"] = "verify";
  j["source"] = opt.source;
  j["dim"] = opt.matrix.rows();
  j["alpha"] = opt.alpha;
  j["beta"] = opt.beta;
  j["grid"] = {{"radii", opt.grid.radii},
               {"angles", opt.grid.angles},
               {"min_offset", opt.grid.min_offset},
               {"max_offset", opt.grid.max_offset}};
  j["c_hat"] = real_json(est.c_hat);
  j["argmax_lambda"] = complex_json(est.argmax_lambda);
  j["safety"] = opt.safety;
  j["c_used"] = real_json(c_used);
  provenance.push_back("c_hat is the maximum of ||R(lambda,T)|| / shape(lambda) over the grid, a lower bound for the minimal C");

  if (opt.probe) {
    const GridOptions coarse = opt.grid.coarse();
    const MinConstantEstimate c_est =
        estimate_min_c(opt.matrix, opt.alpha, opt.beta, coarse.build(), Norm::L2, opt.run.threads);
    const double ratio = c_est.c_hat > 0.0 ? est.c_hat / c_est.c_hat : 1.0;
    const bool finite = ratio < 10.0;
    j["refinement"] = {{"coarse_c_hat", real_json(c_est.c_hat)},
                       {"ratio", real_json(ratio)},
                       {"finite", finite},
                       {"verdict", finite ? "finite C at tested resolution" : "no finite C at tested resolution"}};
    if (!finite) {
      out.warnings.push_back("c_hat grew by a factor " + format_double(ratio) +
                             " under 4x grid density: no finite C at tested resolution");
      flags.push_back("no_finite_c_at_tested_resolution");
    }
  }

  if (opt.beta < 1.0) {
    j["torus_constant"] = torus_constant(params);
    j["kreiss_floor_ok"] = kreiss_floor_ok(params);
  }
  const RegionDescriptor region = region_for(params);
  j["region"] = region_json(region);
  provenance.push_back("region: " + region.provenance);

  std::optional<std::vector<Complex>> eigs;
  std::string spectrum_source = "none";
  if (opt.spectrum) {
    eigs = opt.spectrum;
    spectrum_source = "declared";
  } else if (is_triangular(opt.matrix)) {
    eigs = diagonal_of(opt.matrix);
    spectrum_source = "diagonal";
  } else {
    out.warnings.push_back("matrix is not triangular and no --spectrum was given: region inclusion not checked");
  }
  if (eigs) {
    const SpectrumReport rep = check_spectrum(*eigs, region.shape, opt.tol);
    Json s = spectrum_json(rep, eigs->size());
    s["source"] = spectrum_source;
    s["tol"] = opt.tol;
    j["spectrum"] = s;
  } else {
    j["spectrum"] = {{"source", spectrum_source}, {"checked", 0}, {"inside", nullptr}};
  }

  finish(j, classify_powers(opt.alpha, opt.beta).case_label, provenance, flags, opt.run);
  out.body = dump(j);
  return out;
}

CommandOutput cmd_powers(const PowersOptions& opt) {
  check_operator(opt.matrix);
  if (opt.n_max == 0 || opt.n_max > kMaxSequenceLength) throw UsageError("--n-max must lie in [1, 1e6]");
  if (opt.k > 16) throw UsageError("--k must lie in [0, 16]");
  if (opt.alpha.has_value() != opt.beta.has_value()) throw UsageError("give both --alpha and --beta or neither");
  if (opt.alpha) check_exponents(*opt.alpha, *opt.beta);
  if (opt.format == Format::Svg) throw UsageError("powers writes json or csv");

  CommandOutput out;
  NormSequenceReport report;
  std::optional<std::size_t> overflow_at;
  try {
    report = norm_sequence(opt.matrix, opt.n_max);
  } catch (const SequenceOverflow& e) {
    report = e.partial();
    report.power_fit = fit_sequence(report.n_values, report.power_norms);
    report.diff_fit = fit_sequence(report.n_values, report.diff_norms);
    report.fitted_power_slope = report.power_fit.loglog_slope;
    report.fitted_diff_slope = report.diff_fit.loglog_slope;
    report.log_detected = report.power_fit.log_detected;
    overflow_at = e.reached();
    out.exit_code = kExitOverflow;
    out.warnings.push_back(e.what());
  }

  std::vector<std::string> provenance{"norms are operator 2-norms of T^n and T^(n+1) - T^n, n = 1..n_max",
                                      "slopes fitted on n in [max(n_max/4, 16), n_max]"};
  std::vector<std::string> flags;
  Json j;
  j["command"] = "powers";
  j["source"] = opt.source;
  j["dim"] = opt.matrix.rows();
  j["n_max"] = opt.n_max;
  j["k"] = opt.k;
  j["samples"] = report.n_values.size();
  j["fitted_power_slope"] = real_json(report.fitted_power_slope);
  j["fitted_diff_slope"] = real_json(report.fitted_diff_slope);
  j["log_detected"] = report.log_detected;
  j["gelfand_estimate"] = overflow_at ? Json(nullptr) : real_json(report.gelfand_estimate);
  j["power_fit"] = sequence_fit_json(report.power_fit);
  j["diff_fit"] = sequence_fit_json(report.diff_fit);
  if (overflow_at) j["overflow"] = {{"reached", *overflow_at}};

  std::optional<RegimeFit> fitted;
  try {
    fitted = fit_regime(report);
    j["regimes"] = {{"powers", regime_json(fitted->powers)}, {"differences", regime_json(fitted->differences)}};
  } catch (const InsufficientData& e) {
    j["regimes"] = nullptr;
    out.warnings.push_back(e.what());
  }

  // Contour cross-check at five n ≤ min(n_max, 512).
  const std::uint64_t top = std::min<std::uint64_t>(report.n_values.empty() ? 1 : report.n_values.back(), 512);
  std::set<std::uint64_t> checks{1, std::max<std::uint64_t>(1, top / 4), std::max<std::uint64_t>(1, top / 2),
                                 std::max<std::uint64_t>(1, 3 * top / 4), top};
  Json cc = Json::array();
  for (std::uint64_t n : checks) {
    Json row{{"n", n}};
    try {
      const ComplexMatrix P = mat_power(opt.matrix, n);
      const ComplexMatrix P1 = opt.matrix * P;
      row["power_error"] =
          real_json(scaled_error(power_via_contour(opt.matrix, n, opt.k, opt.run.threads), P));
      row["diff_error"] =
          real_json(scaled_error(diff_via_contour(opt.matrix, n, opt.k, opt.run.threads), P1 - P));
    } catch (const SingularResolvent& e) {
      row["power_error"] = nullptr;
      row["diff_error"] = nullptr;
      row["note"] = e.what();
    }
    cc.push_back(row);
  }
  j["contour_check"] = cc;

  std::string case_label;
  if (opt.alpha) {
    const GrowthRegime pp = classify_powers(*opt.alpha, *opt.beta);
    const GrowthRegime pd = classify_differences(*opt.alpha, *opt.beta);
    case_label = pp.case_label;
    j["comparison"] = {
        {"alpha", *opt.alpha},
        {"beta", *opt.beta},
        {"predicted_powers", regime_json(pp)},
        {"predicted_differences", regime_json(pd)},
        {"powers_within_bound", within_bound(report.power_fit, report.gelfand_estimate, pp)},
        {"differences_within_bound", within_bound(report.diff_fit, report.gelfand_estimate, pd)}};
    provenance.push_back("within_bound: fitted slope <= predicted exponent + 0.1 (+ local log slope)");
    flags = regime_flags(pp);
    append_unique(flags, regime_flags(pd));
  }
  finish(j, case_label, provenance, flags, opt.run);

  if (opt.format == Format::Csv) {
    out.body = norm_sequence_csv(report);
    out.summary = dump(j);
  } else {
    out.body = dump(j);
  }
  return out;
}

CommandOutput cmd_interp(const InterpOptions& opt) {
  Interpolation res = [&] {
    try {
      return interpolate_rk(opt.c0, opt.p0, opt.c1, opt.p1, opt.theta);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();
  Json j;
  j["command"] = "interp";
  j["c0"] = opt.c0;
  j["p0"] = real_json(opt.p0);
  j["c1"] = opt.c1;
  j["p1"] = real_json(opt.p1);
  j["theta"] = opt.theta;
  j["p"] = real_json(res.p);
  j["alpha"] = res.params.alpha();
  j["beta"] = res.params.beta();
  j["c"] = res.params.c();
  j["is_ritt"] = is_ritt(res.params.alpha(), res.params.beta());
  j["conclusion"] = "Kreiss on l^p0 and Ritt on l^p1 give a (theta, 1-theta)-RK operator on l^p, hence Ritt";
  finish(j, classify_powers(res.params.alpha(), res.params.beta()).case_label,
         {"1/p = (1-theta)/p0 + theta/p1, C = c0^(1-theta) c1^theta"}, {}, opt.run);
  return {kExitOk, dump(j), "", {}};
}

RKParams figure_params(int figure) {
  switch (figure) {
    case 1:
      return RKParams(0.25, 0.25, 2.0);
    case 2:
      return RKParams(0.5, 0.5, 2.0);
    case 3:
      return RKParams(0.75, 0.5, 2.0);
    default:
      throw UsageError("--case must be 1, 2 or 3");
  }
}

CommandOutput cmd_figures(const FiguresOptions& opt) {
  if (opt.points < 16) throw UsageError("--points must be at least 16");
  return {kExitOk, render_region_svg(figure_params(opt.figure), opt.points, opt.run.threads), "", {}};
}

ComplexMatrix build_preset(const PresetOptions& opt) {
  try {
    if (opt.name == "diag") {
      if (opt.re.empty()) throw UsageError("diag preset needs --re values");
      if (!opt.im.empty() && opt.im.size() != opt.re.size())
        throw UsageError("--re and --im must have the same length");
      std::vector<Complex> pts;
      for (std::size_t i = 0; i < opt.re.size(); ++i) pts.emplace_back(opt.re[i], opt.im.empty() ? 0.0 : opt.im[i]);
      return diag_from_spectrum(pts);
    }
    if (opt.name == "stolz") return diag_from_spectrum(stolz_spectrum(opt.sigma, opt.a, opt.count));
    if (opt.name == "jordan") return jordan(Complex(opt.rho_re, opt.rho_im), opt.dim);
    if (opt.name == "cesaro-witness") return jordan(Complex(-1.0, 0.0), 2);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown preset '" + opt.name + "' (diag, stolz, jordan, cesaro-witness)");
}

}  // namespace rk
