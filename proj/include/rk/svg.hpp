#pragma once

#include <string>

#include "rk/rk_condition.hpp"

namespace rk {

// 800×800 picture of the spectral region for (α,β,C), β < 1: tinted unit
// disk, admissible region in white, unit circle in black. When α+β > 1 the
// white set is Ω(1/C_{α,β}, α/(1−β)) and the σ = 2C_{α,β} Stolz boundary is
// drawn in cyan. Coordinates are printed with three decimals, so the bytes
// depend only on the inputs.
std::string render_region_svg(const RKParams& params, std::size_t points, unsigned threads = 1);

}  // namespace rk
