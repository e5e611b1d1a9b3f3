#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rk/linalg.hpp"

namespace rk {

// Matrix file format: { "dim": d, "entries": [[re, im], ...] }, row-major,
// exactly d² entries. Throws ParseError on any malformed input.
ComplexMatrix parse_matrix_json(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);
std::string matrix_to_json(const ComplexMatrix& T);

// Spectrum files: a JSON array [[re, im], ...].
std::vector<Complex> parse_points_json(std::string_view text);
std::vector<Complex> read_points_file(const std::string& path);

}  // namespace rk
