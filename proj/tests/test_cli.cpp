#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rkcli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(RKCLI_PATH) + " " + args + " 2>" + err.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err)};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

void check_report_keys(const nlohmann::json& j) {
  CHECK(j.contains("command"));
  CHECK(j.contains("case"));
  CHECK(j["provenance"].is_array());
  CHECK(j["ledger_flags"].is_array());
  CHECK(j["seed"].is_number_unsigned());
}

}  // namespace

TEST_CASE("classify examples") {
  auto r = run("classify --alpha 1 --beta 0");
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  check_report_keys(j);
  CHECK(j["powers"]["kind"] == "Poly");
  CHECK(j["powers"]["exponent"] == 0.0);
  CHECK(j["case"] == "6");
  CHECK(j["is_ritt"] == true);

  j = parse(run("classify --alpha 0 --beta 1").out);
  CHECK(j["powers"]["kind"] == "Poly");
  CHECK(j["powers"]["exponent"] == 1.0);
  CHECK(j["case"] == "2");

  j = parse(run("classify --alpha 0.45 --beta 0.8").out);
  CHECK(j["powers"]["exponent"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(j["case"] == "4.2.2");
  for (const char* key : {"kind", "exponent", "has_log", "log_inside_power", "case", "optimal_k"})
    CHECK(j["powers"].contains(key));
}

TEST_CASE("classify flags the J exponent branch") {
  auto j = parse(run("classify --alpha 3 --beta 1").out);
  CHECK(j["differences"]["exponent"] == 2.0);
  REQUIRE(j["ledger_flags"].size() == 1);
  CHECK(j["ledger_flags"][0] == "j_bound_exponent_minus_gamma_plus_2");
  j = parse(run("classify --alpha 0.5 --beta 0.75").out);
  CHECK(j["ledger_flags"].empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("classify --alpha 9 --beta 0").code == 2);
  CHECK(run("classify --alpha -1 --beta 0").code == 2);
  CHECK(run("classify --alpha x --beta 0").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("region --alpha 0.5 --beta 0.5 --c 2 --points 8").code == 2);
  CHECK(run("region --alpha 0.5 --beta 0.5 --c 0.5").code == 2);
  CHECK(run("interp --c0 1 --p0 1 --c1 1 --p1 inf --theta 1").code == 2);
  CHECK(run("figures --case 4").code == 2);
  CHECK(run("verify --matrix /nonexistent.json --alpha 0 --beta 0").code == 2);
  CHECK(run("powers --preset stolz --sigma 0.5 --a 1 --count 4").code == 2);
}

TEST_CASE("malformed matrix files exit with 2") {
  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"dim": 2, "entries": [[1, 0], [0, 0], [0, 0]]})";
  CHECK(run("verify --matrix " + bad.string() + " --alpha 0 --beta 0").code == 2);
  std::ofstream(bad) << "{ not json";
  CHECK(run("powers --matrix " + bad.string()).code == 2);
}

TEST_CASE("verify") {
  auto r = run("verify --preset diag --re 0 --alpha 0 --beta 0");
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  check_report_keys(j);
  CHECK(j["c_hat"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["region"]["name"] == "OmegaGap");
  CHECK(j["spectrum"]["inside"] == true);

  j = parse(run("verify --preset stolz --sigma 2 --a 1 --count 12 --alpha 0.5 --beta 0.5").out);
  CHECK(j["region"]["name"] == "StolzClosure");
  CHECK(j["spectrum"]["inside"] == true);

  r = run("verify --preset jordan --rho-re 1 --dim 2 --alpha 1 --beta 0");
  CHECK(r.code == 0);
  j = parse(r.out);
  CHECK(j["refinement"]["finite"] == false);
  CHECK(j["refinement"]["verdict"] == "no finite C at tested resolution");
  CHECK(j["refinement"]["ratio"].get<double>() >= 10.0);
}

TEST_CASE("verify reads a matrix file") {
  const fs::path m = scratch() / "m.json";
  std::ofstream(m) << R"({"dim": 2, "entries": [[0.5, 0], [1, 0], [0, 0], [-0.25, 0.1]]})";
  const auto r = run("verify --matrix " + m.string() + " --alpha 0.25 --beta 0.25");
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["dim"] == 2);
  CHECK(j["spectrum"]["checked"] == 2);
}

TEST_CASE("spectral collision exits with 3") {
  const auto r = run("verify --preset diag --re 2 --alpha 0.5 --beta 0.5 --radii 2 --min-offset 1 --max-offset 9 --angles 8");
  CHECK(r.code == 3);
  CHECK(r.err.find("spectrum") != std::string::npos);
}

TEST_CASE("powers") {
  auto r = run("powers --preset diag --re 0.5 --n-max 100");
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  check_report_keys(j);
  CHECK(j["regimes"]["powers"]["kind"] == "ExpDecay");
  CHECK(j["contour_check"].size() == 5);
  for (const auto& row : j["contour_check"]) CHECK(row["power_error"].get<double>() < 1e-10);

  j = parse(run("powers --preset jordan --rho-re 1 --dim 2 --n-max 1000").out);
  CHECK(j["fitted_power_slope"].get<double>() == doctest::Approx(1.0).epsilon(0.05));

  const fs::path csv = scratch() / "seq.csv";
  const fs::path summary = scratch() / "summary.json";
  r = run("powers --preset diag --re 0.9 --im 0.1 --n-max 64 --format csv -o " + csv.string() + " --summary " +
          summary.string());
  REQUIRE(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("n,power_norm,diff_norm\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 65);
  CHECK(parse(slurp(summary))["n_max"] == 64);
}

TEST_CASE("overflow exits with 4 and keeps the partial sequence") {
  const auto r = run("powers --preset diag --re 2 --n-max 2000");
  CHECK(r.code == 4);
  const auto j = parse(r.out);
  CHECK(j["overflow"]["reached"].get<int>() < 2000);
  CHECK(j["samples"].get<int>() > 900);
}

TEST_CASE("interp examples") {
  auto j = parse(run("interp --c0 2 --p0 1 --c1 2 --p1 inf --theta 0.5").out);
  check_report_keys(j);
  CHECK(j["p"] == 2.0);
  CHECK(j["alpha"] == 0.5);
  CHECK(j["beta"] == 0.5);
  CHECK(j["c"] == 2.0);
  CHECK(j["is_ritt"] == true);
  j = parse(run("interp --c0 1 --p0 1 --c1 1 --p1 inf --theta 0.3").out);
  CHECK(j["c"] == 1.0);
  j = parse(run("interp --c0 4 --p0 1 --c1 9 --p1 inf --theta 0.5").out);
  CHECK(j["c"].get<double>() == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("region outputs") {
  auto r = run("region --alpha 0.25 --beta 0.25 --c 2 --format csv --points 64");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("theta,re,im\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 65);

  r = run("region --alpha 0.75 --beta 0.5 --c 2 --format svg");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(r.out.find("#00bcd4") != std::string::npos);
  CHECK(run("region --alpha 0.5 --beta 0.5 --c 2 --format svg").out.find("#00bcd4") == std::string::npos);

  const auto j = parse(run("region --alpha 0.5 --beta 0.5 --c 2 --format json").out);
  check_report_keys(j);

  r = run("region --alpha 0.5 --beta 1 --c 2");
  CHECK(r.code == 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("byte determinism") {
  for (const char* args : {"figures --case 1", "figures --case 2", "figures --case 3",
                           "region --alpha 0.3 --beta 0.2 --c 1.5 --format csv",
                           "verify --preset stolz --sigma 2 --a 1 --count 8 --alpha 0.5 --beta 0.5 --radii 16 --angles 64"}) {
    CAPTURE(args);
    const auto a = run(std::string(args) + " --threads 1");
    const auto b = run(std::string(args) + " --threads 1");
    const auto c = run(std::string(args) + " --threads 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
  }
}

TEST_CASE("seed is recorded and drives nothing else in deterministic commands") {
  const auto j = parse(run("--seed 17 classify --alpha 0.5 --beta 0.5").out);
  CHECK(j["seed"] == 17);
  CHECK(parse(run("classify --alpha 0.5 --beta 0.5 --seed 17").out)["seed"] == 17);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = scratch() / "run.ini";
  std::ofstream(cfg) << "seed=5\n";
  auto j = parse(run("--config " + cfg.string() + " classify --alpha 1 --beta 0").out);
  CHECK(j["seed"] == 5);
  j = parse(run("--config " + cfg.string() + " --seed 6 classify --alpha 1 --beta 0").out);
  CHECK(j["seed"] == 6);
}

TEST_CASE("output file") {
  const fs::path out = scratch() / "fig.svg";
  const auto r = run("figures --case 2 -o " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out) == run("figures --case 2").out);
}
