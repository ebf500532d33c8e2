#include <iostream>

#include <CLI11.hpp>

#include "conflab/error.hpp"
#include "conflab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"conformal_lab: verification suites for Paneitz and conformal Laplacian Green's functions"};
  std::string config_path, out_dir;
  bool verbose = false, catalog = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory (overrides output_dir in the config)");
  app.add_flag("--verbose,-v", verbose, "print one line per finished suite");
  app.add_flag("--list-catalog", catalog, "print the supported backends and their constants");
  CLI11_PARSE(app, argc, argv);

  if (catalog) {
    conflab::list_catalog(std::cout);
    return 0;
  }
  if (config_path.empty()) {
    std::cerr << "CONFIG_INVALID: --config: required unless --list-catalog is given\n";
    return 2;
  }
  try {
    conflab::RunConfig cfg = conflab::load_run_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const auto outcome = conflab::run(cfg, conflab::thread_budget(), verbose ? &std::cerr : nullptr);
    std::cout << (outcome.passed ? "PASS" : "FAIL") << ": " << outcome.reports.size() << " reports in "
              << cfg.output_dir.string() << "\n";
    return outcome.passed ? 0 : 1;
  } catch (const conflab::LabError& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == conflab::ErrorCode::ConfigInvalid) return 2;
    if (e.code() == conflab::ErrorCode::BackendBuildFail) return 3;
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
