#pragma once
//
// JSON and CSV serialization shared by the command-line front end.
//

#include <json.hpp>

#include <string>
#include <vector>

#include "rk/contour_powers.hpp"
#include "rk/growth_bounds.hpp"
#include "rk/linalg.hpp"
#include "rk/spectral_regions.hpp"

namespace rk {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z);
// Finite doubles as numbers; ±inf as the strings "inf"/"-inf", NaN as null.
Json real_json(double x);

// { kind, exponent, has_log, log_inside_power, case, optimal_k, source }
Json regime_json(const GrowthRegime& g);
Json region_json(const RegionDescriptor& region);
Json spectrum_json(const SpectrumReport& report, std::size_t checked);
Json sequence_fit_json(const SequenceFit& fit);

// Ledger flags carried by a regime (empty when none apply).
std::vector<std::string> regime_flags(const GrowthRegime& g);

// "%.17g"
std::string format_double(double x);

// "n,power_norm,diff_norm" followed by one row per sample.
std::string norm_sequence_csv(const NormSequenceReport& report);

// "theta,re,im" followed by one row per boundary point.
std::string boundary_csv(const BoundaryTrace& trace);

}  // namespace rk
