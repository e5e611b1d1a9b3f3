#include "rk/report.hpp"

#include <cmath>
#include <cstdio>
#include <variant>

namespace rk {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json real_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json complex_json(Complex z) { return Json::array({real_json(z.real()), real_json(z.imag())}); }

Json regime_json(const GrowthRegime& g) {
  Json j;
  j["kind"] = growth_kind_name(g.kind);
  j["exponent"] = real_json(g.exponent);
  j["has_log"] = g.has_log;
  j["log_inside_power"] = g.log_inside_power;
  j["case"] = g.case_label;
  j["optimal_k"] = g.optimal_k ? Json(*g.optimal_k) : Json(nullptr);
  j["source"] = g.source;
  return j;
}

std::vector<std::string> regime_flags(const GrowthRegime& g) {
  std::vector<std::string> flags;
  if (g.j_exponent) flags.push_back("j_bound_exponent_minus_gamma_plus_2");
  if (g.source.find("search cap") != std::string::npos) flags.push_back("k_search_capped_at_64");
  if (g.source.find("both case 4.2 branches agree") != std::string::npos) flags.push_back("case_4_2_tie");
  if (g.case_label == "1" && g.source.find("differences") != std::string::npos)
    flags.push_back("difference_decay_deduced_from_powers");
  return flags;
}

Json region_json(const RegionDescriptor& region) {
  Json j;
  j["name"] = region_name(region.shape);
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, OmegaGap>) {
          j["q"] = real_json(s.q);
          j["a"] = real_json(s.a);
        } else if constexpr (std::is_same_v<S, SectorAtOne>) {
          j["omega"] = real_json(s.omega);
        } else if constexpr (std::is_same_v<S, StolzClosure>) {
          j["sigma"] = real_json(s.sigma);
          j["a"] = real_json(s.a);
        }
      },
      region.shape);
  j["provenance"] = region.provenance;
  return j;
}

Json spectrum_json(const SpectrumReport& report, std::size_t checked) {
  Json j;
  j["checked"] = checked;
  j["inside"] = report.ok();
  Json v = Json::array();
  for (const auto& s : report.violations)
    v.push_back({{"index", s.index}, {"z", complex_json(s.z)}, {"margin", real_json(s.margin)}});
  j["violations"] = v;
  return j;
}

Json sequence_fit_json(const SequenceFit& fit) {
  Json j;
  j["window_begin"] = fit.window_begin;
  j["samples"] = fit.samples;
  j["loglog_slope"] = real_json(fit.loglog_slope);
  j["loglog_r2"] = real_json(fit.loglog_r2);
  j["semilog_rate"] = real_json(fit.semilog_rate);
  j["semilog_r2"] = real_json(fit.semilog_r2);
  j["log_adjusted_slope"] = real_json(fit.log_adjusted_slope);
  j["log_coefficient"] = real_json(fit.log_coefficient);
  j["log_t"] = real_json(fit.log_t);
  j["log_detected"] = fit.log_detected;
  j["exp_decay"] = fit.exp_decay;
  return j;
}

std::string norm_sequence_csv(const NormSequenceReport& report) {
  std::string out = "n,power_norm,diff_norm\n";
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    out += std::to_string(report.n_values[i]);
    out += ',';
    out += format_double(report.power_norms[i]);
    out += ',';
    out += format_double(report.diff_norms[i]);
    out += '\n';
  }
  return out;
}

std::string boundary_csv(const BoundaryTrace& trace) {
  std::string out = "theta,re,im\n";
  for (const auto& p : trace.points) {
    out += format_double(p.theta);
    out += ',';
    out += format_double(p.z.real());
    out += ',';
    out += format_double(p.z.imag());
    out += '\n';
  }
  return out;
}

}  // namespace rk
