#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "rk/commands.hpp"
#include "rk/errors.hpp"
#include "rk/matrix_io.hpp"

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string output;
  std::string format;
  unsigned threads = 1;
};

struct MatrixFlags {
  std::string file;
  rk::PresetOptions preset;
};

void add_matrix_flags(CLI::App* cmd, MatrixFlags& m) {
  auto* file = cmd->add_option("--matrix", m.file, "matrix JSON file {\"dim\": d, \"entries\": [[re, im], ...]}");
  auto* preset = cmd->add_option("--preset", m.preset.name, "diag | stolz | jordan | cesaro-witness");
  file->excludes(preset);
  cmd->add_option("--re", m.preset.re, "diag preset: real parts")->delimiter(',');
  cmd->add_option("--im", m.preset.im, "diag preset: imaginary parts")->delimiter(',');
  cmd->add_option("--sigma", m.preset.sigma, "stolz preset: sigma > 1");
  cmd->add_option("--a", m.preset.a, "stolz preset: exponent a >= 1");
  cmd->add_option("--count", m.preset.count, "stolz preset: number of eigenvalues");
  cmd->add_option("--rho-re", m.preset.rho_re, "jordan preset: eigenvalue, real part");
  cmd->add_option("--rho-im", m.preset.rho_im, "jordan preset: eigenvalue, imaginary part");
  cmd->add_option("--dim", m.preset.dim, "jordan preset: block size");
}

std::pair<rk::ComplexMatrix, std::string> load_matrix(const MatrixFlags& m) {
  if (!m.file.empty()) return {rk::read_matrix_file(m.file), m.file};
  if (!m.preset.name.empty()) return {rk::build_preset(m.preset), "preset:" + m.preset.name};
  throw rk::UsageError("give --matrix FILE or --preset NAME");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rk::UsageError("cannot open output file " + path);
  out << text;
}

rk::Format format_or(const Globals& g, rk::Format fallback) {
  return g.format.empty() ? fallback : rk::parse_format(g.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the (alpha,beta)-RK resolvent condition"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file (flags override it)");

  Globals g;
  app.add_option("--seed", g.seed, "seed recorded in reports and used by sampled checks");
  app.add_option("--output,-o", g.output, "output file (default: stdout)");
  app.add_option("--format", g.format, "json | csv | svg")->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->check(CLI::Range(0u, 256u));

  rk::ClassifyOptions classify;
  auto* c_classify = app.add_subcommand("classify", "growth regimes of powers and differences for (alpha, beta)");
  c_classify->add_option("--alpha", classify.alpha)->required();
  c_classify->add_option("--beta", classify.beta)->required();
  double classify_c = 0.0;
  auto* classify_c_opt = c_classify->add_option("--c", classify_c, "RK constant, adds the spectral region");

  rk::RegionOptions region;
  auto* c_region = app.add_subcommand("region", "boundary of the spectral region (CSV, JSON or SVG)");
  c_region->add_option("--alpha", region.alpha)->required();
  c_region->add_option("--beta", region.beta)->required();
  c_region->add_option("--c", region.c)->required();
  c_region->add_option("--points", region.points, "boundary points (>= 16)");

  rk::VerifyOptions verify;
  MatrixFlags verify_m;
  std::string spectrum_file;
  auto* c_verify = app.add_subcommand("verify", "estimate the RK constant of a matrix and check its spectrum");
  add_matrix_flags(c_verify, verify_m);
  c_verify->add_option("--alpha", verify.alpha)->required();
  c_verify->add_option("--beta", verify.beta)->required();
  c_verify->add_option("--radii", verify.grid.radii, "grid radii count");
  c_verify->add_option("--angles", verify.grid.angles, "grid angle count");
  c_verify->add_option("--min-offset", verify.grid.min_offset, "smallest |lambda| - 1");
  c_verify->add_option("--max-offset", verify.grid.max_offset, "largest |lambda| - 1");
  c_verify->add_option("--safety", verify.safety, "C used for the region = max(1, safety * c_hat)");
  c_verify->add_option("--tol", verify.tol, "relative inflation of the region for the inclusion check");
  c_verify->add_option("--spectrum", spectrum_file, "JSON array [[re, im], ...] of eigenvalues");
  bool no_probe = false;
  c_verify->add_flag("--no-probe", no_probe, "skip the grid-refinement divergence probe");

  rk::PowersOptions powers;
  MatrixFlags powers_m;
  std::string summary_file;
  auto* c_powers = app.add_subcommand("powers", "norm sequences of T^n and T^(n+1) - T^n with slope fits");
  add_matrix_flags(c_powers, powers_m);
  c_powers->add_option("--n-max", powers.n_max, "largest power (<= 1e6)");
  c_powers->add_option("--k", powers.k, "integration order for the contour cross-check");
  double p_alpha = 0.0, p_beta = 0.0;
  auto* p_alpha_opt = c_powers->add_option("--alpha", p_alpha, "compare with the predicted regime");
  auto* p_beta_opt = c_powers->add_option("--beta", p_beta, "compare with the predicted regime");
  c_powers->add_option("--summary", summary_file, "JSON summary file when writing CSV (default: stderr)");

  rk::InterpOptions interp;
  auto* c_interp = app.add_subcommand("interp", "interpolate Kreiss on l^p0 and Ritt on l^p1");
  c_interp->add_option("--c0", interp.c0, "Kreiss constant on l^p0")->required();
  c_interp->add_option("--p0", interp.p0, "exponent p0 (inf allowed)")->required();
  c_interp->add_option("--c1", interp.c1, "Ritt constant on l^p1")->required();
  c_interp->add_option("--p1", interp.p1, "exponent p1 (inf allowed)")->required();
  c_interp->add_option("--theta", interp.theta, "interpolation parameter in (0, 1)")->required();

  rk::FiguresOptions figures;
  auto* c_figures = app.add_subcommand("figures", "SVG of the reference parameter triples");
  c_figures->add_option("--case", figures.figure, "1, 2 or 3")->required();
  c_figures->add_option("--points", figures.points, "boundary points (>= 16)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rk::kExitUsage;
  }

  const rk::RunSettings run{g.seed, g.threads};
  rk::CommandOutput out;
  try {
    if (c_classify->parsed()) {
      if (!g.format.empty() && g.format != "json") throw rk::UsageError("classify writes json");
      if (*classify_c_opt) classify.c = classify_c;
      classify.run = run;
      out = rk::cmd_classify(classify);
    } else if (c_region->parsed()) {
      region.format = format_or(g, rk::Format::Csv);
      region.run = run;
      out = rk::cmd_region(region);
    } else if (c_verify->parsed()) {
      if (!g.format.empty() && g.format != "json") throw rk::UsageError("verify writes json");
      std::tie(verify.matrix, verify.source) = load_matrix(verify_m);
      if (!spectrum_file.empty()) verify.spectrum = rk::read_points_file(spectrum_file);
      verify.probe = !no_probe;
      verify.run = run;
      out = rk::cmd_verify(verify);
    } else if (c_powers->parsed()) {
      std::tie(powers.matrix, powers.source) = load_matrix(powers_m);
      if (*p_alpha_opt) powers.alpha = p_alpha;
      if (*p_beta_opt) powers.beta = p_beta;
      powers.format = format_or(g, rk::Format::Json);
      powers.run = run;
      out = rk::cmd_powers(powers);
    } else if (c_interp->parsed()) {
      if (!g.format.empty() && g.format != "json") throw rk::UsageError("interp writes json");
      interp.run = run;
      out = rk::cmd_interp(interp);
    } else if (c_figures->parsed()) {
      if (!g.format.empty() && g.format != "svg") throw rk::UsageError("figures writes svg");
      figures.run = run;
      out = rk::cmd_figures(figures);
    }
  } catch (const rk::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitUsage;
  } catch (const rk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitUsage;
  } catch (const rk::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitUsage;
  } catch (const rk::InfeasibleGeometry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitUsage;
  } catch (const rk::SingularResolvent& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitSpectral;
  } catch (const rk::OverflowGuard& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitOverflow;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    write_text(g.output, out.body);
    if (!out.summary.empty()) {
      if (summary_file.empty())
        std::cerr << out.summary;
      else
        write_text(summary_file, out.summary);
    }
  } catch (const rk::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rk::kExitUsage;
  }
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
  return out.exit_code;
}
