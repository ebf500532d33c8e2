#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conflab/verify.hpp"

namespace conflab {

struct BackendEntry {
  BackendKind kind = BackendKind::Sphere;
  int n = 3;
  CatalogParams params{};
  BasisSpec basis{};
  // Optional conformal factor for factor-aware suites: "none", "moebius" or "random".
  std::string factor = "none";
  std::uint64_t factor_seed = 1;
  double factor_amplitude = 0.15;
  std::string label() const;
};

struct RunConfig {
  std::vector<BackendEntry> catalog;
  std::vector<std::string> suites;
  int pole_count = 2;
  std::vector<Point> poles;  // explicit poles override pole_count
  VerifySettings settings{};
  std::map<std::string, double> tolerances;  // suite -> relative tolerance
  std::filesystem::path output_dir = "conformal_lab_out";
  std::uint64_t seed = 20240101;
  int trials = 10;
  bool dump_symbol = false, dump_spectrum = false, dump_green = false;
};

const std::vector<std::string>& known_suites();

// Throws CONFIG_INVALID naming the offending field.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

struct RunOutcome {
  std::vector<VerificationReport> reports;  // sorted by (suite, backend)
  nlohmann::json summary;
  bool passed = false;
};

// Builds the backends, runs the selected suites (at most `threads` concurrently),
// and writes one report per (suite, backend) plus summary.json. Throws BACKEND_BUILD_FAIL.
RunOutcome run(const RunConfig& config, int threads, std::ostream* log = nullptr);

// Thread cap from CONFORMAL_LAB_THREADS, else the hardware concurrency.
int thread_budget();

struct CatalogRow {
  std::string kind;
  int n;
  std::string params;
  double R, Q, lambda1;
};

std::vector<CatalogRow> catalog_rows();
void list_catalog(std::ostream& os);

// Exact-looking rational rendering for small denominators (e.g. -9/8), else decimal.
std::string format_constant(double v);

}  // namespace conflab
