#include "rk/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rk {
namespace {

using nlohmann::json;

Complex parse_pair(const json& item, std::size_t index) {
  if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
    throw ParseError("entry " + std::to_string(index) + " is not a [re, im] pair");
  const Complex z(item[0].get<double>(), item[1].get<double>());
  if (!is_finite(z)) throw ParseError("entry " + std::to_string(index) + " is not finite");
  return z;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ComplexMatrix parse_matrix_json(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError("matrix document needs an integer \"dim\"");
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw ParseError("matrix document needs an \"entries\" array");

  const auto dim = doc["dim"].get<long long>();
  if (dim < 1 || dim > kMaxDim) throw ParseError("\"dim\" must lie in [1, 512]");
  const auto& entries = doc["entries"];
  if (entries.size() != static_cast<std::size_t>(dim * dim))
    throw ParseError("\"entries\" has " + std::to_string(entries.size()) + " items, expected dim^2 = " +
                     std::to_string(dim * dim));

  ComplexMatrix T(dim, dim);
  for (long long i = 0; i < dim; ++i)
    for (long long j = 0; j < dim; ++j) {
      const auto k = static_cast<std::size_t>(i * dim + j);
      T(i, j) = parse_pair(entries[k], k);
    }
  return T;
}

ComplexMatrix read_matrix_file(const std::string& path) { return parse_matrix_json(slurp(path)); }

std::string matrix_to_json(const ComplexMatrix& T) {
  check_operator(T);
  json entries = json::array();
  for (Eigen::Index i = 0; i < T.rows(); ++i)
    for (Eigen::Index j = 0; j < T.cols(); ++j) entries.push_back({T(i, j).real(), T(i, j).imag()});
  return json{{"dim", T.rows()}, {"entries", entries}}.dump();
}

std::vector<Complex> parse_points_json(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_array()) throw ParseError("spectrum document must be a JSON array of [re, im] pairs");
  std::vector<Complex> points;
  points.reserve(doc.size());
  for (std::size_t k = 0; k < doc.size(); ++k) points.push_back(parse_pair(doc[k], k));
  return points;
}

std::vector<Complex> read_points_file(const std::string& path) { return parse_points_json(slurp(path)); }

}  // namespace rk
