#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conflab/error.hpp"
#include "conflab/runner.hpp"

using namespace conflab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json s4_total_q() {
  return json::parse(R"({
    "catalog": [{"kind": "sphere", "n": 4, "params": {"radius": 1.0}, "basis": {"Lmax": 4}}],
    "suites": ["total-q"],
    "seed": 5
  })");
}

std::string invalid_message(const json& j) {
  try {
    parse_run_config(j);
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
    return e.what();
  }
  FAIL("expected CONFIG_INVALID");
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("conflab_runner_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("config errors name the offending field") {
  auto j = s4_total_q();
  j["suites"] = json::array();
  CHECK(invalid_message(j).find("suites") != std::string::npos);

  j = s4_total_q();
  j["suites"] = {"weak-identity"};  // n = 4 only
  CHECK(invalid_message(j).find("weak-identity") != std::string::npos);

  j = s4_total_q();
  j["suites"] = {"nonsense"};
  CHECK(invalid_message(j).find("nonsense") != std::string::npos);

  j = s4_total_q();
  j["catalog"][0]["kind"] = "torus";
  CHECK(invalid_message(j).find("catalog[0].kind") != std::string::npos);

  j = s4_total_q();
  j["catalog"][0]["params"]["radius"] = -1.0;
  CHECK(invalid_message(j).find("catalog[0].params.radius") != std::string::npos);

  j = s4_total_q();
  j["tolerances"] = {{"total-q", "tight"}};
  CHECK(invalid_message(j).find("tolerances.total-q") != std::string::npos);

  j = s4_total_q();
  j["poles"] = {{"points", {{{"x", {1.0, 1.0, 0.0}}}}}};
  CHECK(invalid_message(j).find("poles.points") != std::string::npos);

  j = s4_total_q();
  j["catalog"].push_back({{"kind", "product-S1xS2"}, {"n", 3}, {"factor", {{"type", "moebius"}}}});
  CHECK(invalid_message(j).find("catalog[1].factor.type") != std::string::npos);
}

TEST_CASE("backend build failures are reported") {
  auto j = s4_total_q();
  j["catalog"].push_back({{"kind", "product-S1xS2"}, {"n", 5}});
  j["suites"] = {"signs"};
  auto cfg = parse_run_config(j);
  cfg.output_dir = scratch("buildfail");
  try {
    run(cfg, 1);
    FAIL("expected BACKEND_BUILD_FAIL");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::BackendBuildFail);
  }
}

TEST_CASE("total-q on round S4 passes and runs are byte-identical") {
  auto cfg = parse_run_config(s4_total_q());
  cfg.output_dir = scratch("a");
  const auto a = run(cfg, 1);
  CHECK(a.passed);
  REQUIRE(a.reports.size() == 1);
  CHECK(a.reports[0].detail["verdict"] == "EQUALITY");
  CHECK(a.reports[0].detail["integral_q"].get<double>() == doctest::Approx(16 * kPi * kPi).epsilon(1e-10));

  auto cfg2 = cfg;
  cfg2.output_dir = scratch("b");
  const auto b = run(cfg2, 2);
  for (const auto& e : fs::directory_iterator(cfg.output_dir))
    CHECK(slurp(e.path()) == slurp(cfg2.output_dir / e.path().filename()));
  CHECK(a.summary == b.summary);
}

TEST_CASE("exploratory records never fail a run") {
  auto j = json::parse(R"({
    "catalog": [{"kind": "product-S1xS2", "n": 3, "basis": {"K": 1, "Lmax": 2}}],
    "suites": ["signs", "green-compare"],
    "poles": {"count": 1}
  })");
  auto cfg = parse_run_config(j);
  cfg.output_dir = scratch("explore");
  const auto out = run(cfg, 1);
  CHECK(out.passed);
  for (const auto& r : out.reports)
    for (const auto& c : r.checks) CHECK_FALSE(c.asserted);
}

TEST_CASE("catalog table carries the derived constants") {
  std::ostringstream os;
  list_catalog(os);
  const auto t = os.str();
  CHECK(t.find("product-S1xS2") != std::string::npos);
  bool s4 = false, s3 = false, s1s2 = false;
  for (const auto& r : catalog_rows()) {
    s4 |= r.kind == "sphere" && r.n == 4 && format_constant(r.Q) == "6";
    s3 |= r.kind == "sphere" && r.n == 3 && format_constant(r.Q) == "15/8";
    s1s2 |= r.kind == "product-S1xS2" && r.n == 3 && format_constant(r.Q) == "-9/8";
    CHECK(r.lambda1 > 0.0);
  }
  CHECK(s4);
  CHECK(s3);
  CHECK(s1s2);
  CHECK(format_constant(kPi) != "");
  CHECK(format_constant(-0.125) == "-1/8");
}
