#pragma once
//
// The rkcli subcommands as library functions: each takes validated options
// and returns the bytes to write plus an exit code.
//

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rk/linalg.hpp"
#include "rk/report.hpp"
#include "rk/rk_condition.hpp"

namespace rk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSpectral = 3;
inline constexpr int kExitOverflow = 4;

// Invalid flag values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Svg };

Format parse_format(const std::string& name);

struct RunSettings {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string body;     // main output: stdout or --output
  std::string summary;  // JSON summary accompanying CSV output, else empty
  std::vector<std::string> warnings;
};

// Exponents accepted on the command line.
inline constexpr double kMaxCliExponent = 8.0;

struct ClassifyOptions {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> c;
  RunSettings run;
};
CommandOutput cmd_classify(const ClassifyOptions& opt);

struct RegionOptions {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 1.0;
  std::size_t points = 256;
  Format format = Format::Csv;
  RunSettings run;
};
CommandOutput cmd_region(const RegionOptions& opt);

struct GridOptions {
  std::size_t radii = 48;
  std::size_t angles = 256;
  double min_offset = 1e-6;
  double max_offset = 9.0;

  LambdaGrid build() const;
  // Quarter density: counts / 4, innermost offset × 16.
  GridOptions coarse() const;
};

struct VerifyOptions {
  ComplexMatrix matrix;
  std::string source;
  double alpha = 0.0;
  double beta = 0.0;
  GridOptions grid;
  double safety = 1.01;
  double tol = 1e-9;
  std::optional<std::vector<Complex>> spectrum;
  bool probe = true;
  RunSettings run;
};
CommandOutput cmd_verify(const VerifyOptions& opt);

struct PowersOptions {
  ComplexMatrix matrix;
  std::string source;
  std::uint64_t n_max = 1000;
  unsigned k = 1;
  std::optional<double> alpha;
  std::optional<double> beta;
  Format format = Format::Json;
  RunSettings run;
};
CommandOutput cmd_powers(const PowersOptions& opt);

struct InterpOptions {
  double c0 = 1.0;
  double p0 = 1.0;
  double c1 = 1.0;
  double p1 = 1.0;
  double theta = 0.5;
  RunSettings run;
};
CommandOutput cmd_interp(const InterpOptions& opt);

struct FiguresOptions {
  int figure = 1;
  std::size_t points = 1024;
  RunSettings run;
};
CommandOutput cmd_figures(const FiguresOptions& opt);

// (α, β, C) of the three reference figures.
RKParams figure_params(int figure);

struct PresetOptions {
  std::string name;  // diag | stolz | jordan | cesaro-witness
  std::vector<double> re;
  std::vector<double> im;
  double sigma = 2.0;
  double a = 1.0;
  std::size_t count = 20;
  double rho_re = 1.0;
  double rho_im = 0.0;
  std::size_t dim = 2;
};
ComplexMatrix build_preset(const PresetOptions& opt);

// Exactly triangular (all entries on one side of the diagonal are 0).
bool is_triangular(const ComplexMatrix& T);

}  // namespace rk
