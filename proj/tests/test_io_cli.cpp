#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wpi/cli.hpp"
#include "wpi/io.hpp"
#include "wpi/weights.hpp"

using namespace wpi;
namespace fs = std::filesystem;

namespace {

fs::path sandbox() {
  fs::path p = fs::temp_directory_path() / "wpi_cli_test";
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_argv(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("wpi");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("csv profile round trip and validation") {
  fs::path dir = sandbox();
  fs::path csv = dir / "samples.csv";
  write_file(csv, "t,value\n0,1\n1,2\n2,5\n4,9\n");
  ScalarProfile p = read_profile_csv(csv.string());
  CHECK(eval(p, 1.0) == doctest::Approx(2.0));
  CHECK(eval(p, 4.0) == doctest::Approx(9.0));

  fs::path bad = dir / "bad.csv";
  write_file(bad, "t,value\n0,1\n2,2\n1,3\n");
  try {
    read_profile_csv(bad.string());
    FAIL("expected a line-precise error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find(":4:") != std::string::npos);
  }
}

TEST_CASE("model/weight/end JSON parsing") {
  nlohmann::json model = {
      {"n", 4},
      {"domain", {{"kind", "pole_model"}, {"t_lo", 0.0}, {"t_hi", 1e6}, {"hi_infinite", true}}},
      {"eta", {{"builtin", "identity"}}},
      {"fiber", {{"C_N", 0.0}, {"V_N", 1.0}}}};
  WarpedModel m = model_from_json(model);
  CHECK(m.n == 4);
  CHECK(eval(m.eta, 2.0) == doctest::Approx(2.0));

  nlohmann::json w = {{"source", "hardy"}, {"n", 4}};
  WeightProfile wp = weight_from_json(w, &m);
  CHECK(eval(wp.rho, 2.0) == doctest::Approx(0.25));

  nlohmann::json e = {{"A", {{"builtin", "power"}, {"coeff", 6.2832}, {"exponent", 1.0}}},
                      {"r0", 1.0},
                      {"label", "R2"}};
  EndProfile ep = end_from_json(e);
  CHECK(eval(ep.area, 2.0) == doctest::Approx(12.5664));

  nlohmann::json bad = {{"n", 4}, {"domain", {{"kind", "saddle"}}}};
  CHECK_THROWS_AS(model_from_json(bad), std::invalid_argument);
}

TEST_CASE("classify command writes the verdict and exits 0") {
  fs::path dir = sandbox() / "classify";
  fs::create_directories(dir);
  fs::path spec = dir / "r2.json";
  write_file(spec,
             R"({"A": {"builtin": "power", "coeff": 6.2832, "exponent": 1.0}, "r0": 1.0, "label": "R2"})");
  const int rc =
      run_argv({"classify", "--end", spec.string(), "--out", (dir / "out").string()});
  CHECK(rc == 0);
  const std::string j = slurp(dir / "out" / "classification.json");
  CHECK(j.find("\"parabolic\"") != std::string::npos);
}

TEST_CASE("malformed spec exits 1 with a line-precise message") {
  fs::path dir = sandbox() / "badspec";
  fs::create_directories(dir);
  fs::path spec = dir / "broken.json";
  write_file(spec, "{\n  \"A\": {\n");
  const int rc = run_argv({"classify", "--end", spec.string(), "--out", dir.string()});
  CHECK(rc == 1);
}

TEST_CASE("decay command reproduces the sharp rate and is byte-deterministic") {
  fs::path dir = sandbox() / "decay";
  fs::create_directories(dir);
  fs::path model = dir / "r4.json";
  write_file(model, R"({
    "n": 4,
    "domain": {"kind": "pole_model", "t_lo": 0.0, "t_hi": 1.0e7, "hi_infinite": true},
    "eta": {"builtin": "identity"},
    "fiber": {"C_N": 0.0, "V_N": 1.0}
  })");
  auto run_once = [&](const std::string& sub) {
    const int rc = run_argv({"decay", "--model", model.string(), "--weight", "hardy", "--n",
                             "4", "--rmax", "6", "--out", (dir / sub).string()});
    REQUIRE(rc == 0);
    return slurp(dir / sub / "decay_fit.json");
  };
  const std::string a = run_once("out1");
  const std::string b = run_once("out2");
  CHECK(a == b);
  CHECK(slurp(dir / "out1" / "decay_series.csv") == slurp(dir / "out2" / "decay_series.csv"));
  nlohmann::json j = nlohmann::json::parse(a);
  CHECK(std::abs(j.at("rate").get<double>() + 2.0) <= 1e-6);
}

TEST_CASE("rigidity cosh-power command reports the asymptotic exponent") {
  fs::path dir = sandbox() / "rigidity";
  fs::create_directories(dir);
  const int rc = run_argv({"rigidity", "cosh-power", "--alpha", "2", "--c1", "1", "--n", "4",
                           "--out", dir.string()});
  CHECK(rc == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(dir / "cosh_power.json"));
  CHECK(std::abs(j.at("fitted_exponent").get<double>() - 2.0) <= 0.04);
  CHECK(fs::exists(dir / "cosh_power_eta.csv"));
}

TEST_CASE("rigidity comparison check flags the growing weight with exit code 2") {
  fs::path dir = sandbox() / "comparison";
  fs::create_directories(dir);
  fs::path w = dir / "grow.json";
  write_file(w, R"({"source": "user", "rho": {"builtin": "exp", "rate": 1.0}})");
  const int rc = run_argv({"rigidity", "comparison", "--weight-spec", w.string(), "--n", "4",
                           "--r0", "1", "-b", "40", "--out", dir.string()});
  CHECK(rc == 2);
  nlohmann::json j = nlohmann::json::parse(slurp(dir / "comparison.json"));
  CHECK(j.at("nonexistence_flag").get<bool>());
}

TEST_CASE("curvature command writes a sweep") {
  fs::path dir = sandbox() / "curv";
  fs::create_directories(dir);
  fs::path model = dir / "h3.json";
  write_file(model, R"({
    "n": 3,
    "domain": {"kind": "pole_model", "t_lo": 0.0, "t_hi": 30.0},
    "eta": {"builtin": "sinh"},
    "fiber": {"C_N": 1.0, "V_N": 12.566, "K_bar": 1.0, "ric_bar": 1.0}
  })");
  const int rc = run_argv({"curvature", "--model", model.string(), "--out", dir.string(),
                           "--svg"});
  CHECK(rc == 0);
  const std::string csv = slurp(dir / "curvature.csv");
  CHECK(csv.find("sectional_radial") != std::string::npos);
  CHECK(fs::exists(dir / "curvature_rho.svg"));
}

TEST_CASE("spectral schrodinger mode through the CLI") {
  fs::path dir = sandbox() / "schro";
  fs::create_directories(dir);
  fs::path model = dir / "r4.json";
  write_file(model, R"({
    "n": 4,
    "domain": {"kind": "pole_model", "t_lo": 0.0, "t_hi": 1.0e7, "hi_infinite": true},
    "eta": {"builtin": "identity"},
    "fiber": {"C_N": 0.0, "V_N": 1.0}
  })");
  const int rc = run_argv({"spectral", "--model", model.string(), "--mode", "schrodinger",
                           "--weight", "hardy", "--n", "4", "-a", "0.01", "-b", "100",
                           "--grid", "1201", "--out", dir.string()});
  CHECK(rc == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(dir / "spectral.json"));
  CHECK(j.at("lambda1").get<double>() >= -1e-8);
  CHECK(fs::exists(dir / "eigenvector.csv"));
}

TEST_CASE("rigidity ode command integrates cosh") {
  fs::path dir = sandbox() / "ode";
  fs::create_directories(dir);
  const int rc = run_argv({"rigidity", "ode", "--tau", "1", "--eta0", "1", "--deta0", "0",
                           "--tmax", "5", "--out", dir.string()});
  CHECK(rc == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(dir / "warp_ode.json"));
  CHECK(j.at("eta_end").get<double>() == doctest::Approx(std::cosh(5.0)).epsilon(1e-8));
}

TEST_CASE("weight command resolves the Green construction from a model") {
  fs::path dir = sandbox() / "green";
  fs::create_directories(dir);
  fs::path model = dir / "r4.json";
  write_file(model, R"({
    "n": 4,
    "domain": {"kind": "pole_model", "t_lo": 0.0, "t_hi": 1.0e7, "hi_infinite": true},
    "eta": {"builtin": "identity"},
    "fiber": {"C_N": 0.0, "V_N": 1.0}
  })");
  const int rc = run_argv({"weight", "--model", model.string(), "--weight", "green", "-a",
                           "0.5", "-b", "10", "--grid", "40", "--out", dir.string()});
  CHECK(rc == 0);
  // the Green weight of the flat 4-model is the Hardy weight 1/r^2
  std::ifstream in(dir / "weight.csv");
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  const auto comma = first.find(',');
  const double r = std::stod(first.substr(0, comma));
  const double rho = std::stod(first.substr(comma + 1));
  CHECK(rho == doctest::Approx(1.0 / (r * r)).epsilon(1e-7));
}

TEST_CASE("user weight from CSV samples") {
  fs::path dir = sandbox() / "wcsv";
  fs::create_directories(dir);
  fs::path csv = dir / "rho.csv";
  std::ostringstream os;
  os << "r,rho\n";
  for (int i = 0; i <= 50; ++i) {
    const double r = 1.0 + 0.2 * i;
    os << r << "," << 2.0 + std::sin(r) << "\n";
  }
  write_file(csv, os.str());
  nlohmann::json spec = {{"source", "user"}, {"rho", {{"csv", csv.string()}}}};
  WeightProfile w = weight_from_json(spec, nullptr);
  CHECK(w.valid_as_weight);
  CHECK(eval(w.rho, 3.0) == doctest::Approx(2.0 + std::sin(3.0)).epsilon(1e-3));
}

TEST_CASE("svg writer emits a polyline") {
  fs::path dir = sandbox();
  fs::path svg = dir / "spark.svg";
  write_svg_sparkline(svg.string(), {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0});
  const std::string text = slurp(svg);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("polyline") != std::string::npos);
}
