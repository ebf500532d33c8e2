#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conflab/green.hpp"
#include "conflab/polar.hpp"

namespace conflab {

struct CheckRecord {
  std::string eq;  // identity or law being checked
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool asserted = true;  // false: exploratory, reported but never gating
  nlohmann::json detail = nlohmann::json::object();
};

CheckRecord make_check(std::string eq, double residual, double tol, bool asserted = true);

// Status of the hypotheses that gate the sign theorems and identities.
struct HypothesisLedger {
  double lambda1_L = 0.0;
  bool yamabe_positive = false;
  double q_min = 0.0, q_max = 0.0;
  bool q_nonnegative_nontrivial = false;
  bool theorem_gate() const { return yamabe_positive && q_nonnegative_nontrivial; }
};

HypothesisLedger hypothesis_ledger(const ConformalFactor& f);

struct VerifySettings {
  GreenCutoff green{3};
  PolarSpec polar{};
  // Curvature of the blown-up metric is skipped within this internal radius of the pole.
  double exclusion = 1e-6;
  double tol = -1.0;  // relative tolerance override; < 0 keeps the suite default
  nlohmann::json to_json() const;
};

struct VerificationReport {
  std::string suite;
  std::string backend;
  std::vector<CheckRecord> checks;
  HypothesisLedger hypotheses;
  nlohmann::json resolution = nlohmann::json::object();
  nlohmann::json detail = nlohmann::json::object();
  double runtime_s = 0.0;

  bool passed() const;  // every asserted check passes
  double max_residual_ratio() const;
  nlohmann::json to_json() const;
};

// Constant, the three lowest non-constant modes and one seeded random field of degree <= 2.
std::vector<ScalarField> standard_test_functions(const ManifoldModel& m, std::uint64_t seed);

// Small random log-factor built from modes of degree <= 2.
FunctionPtr random_log_factor(const ManifoldModel& m, std::mt19937_64& rng, double amplitude = 0.15);

// |Rc|^2 of G^{4/(n-2)} g~ (n = 4: G^2 g~), measured in g~, at q.
double blowup_ricci_norm2(const ConformalFactor& f, const GreenField& gl, const Point& q);

// Weak form of the key identity against test functions; n = 3 uses its own tag.
VerificationReport check_weak_identity(const ModelPtr& m, const Point& pole, const std::vector<ScalarField>& phis,
                                       const VerifySettings& s = {});
VerificationReport check_4d_identity(const ModelPtr& m, const Point& pole, const std::vector<ScalarField>& phis,
                                     const VerifySettings& s = {});

// detail: integral_q, defect, sum, target, verdict (EQUALITY | STRICT).
VerificationReport check_total_q(const ConformalFactor& f, const Point& pole, const VerifySettings& s = {});

VerificationReport check_covariance(const ModelPtr& m, int trials, std::uint64_t seed, const VerifySettings& s = {});

VerificationReport check_sign_theorems(const ConformalFactor& f, const std::vector<Point>& poles,
                                       const VerifySettings& s = {});

// Poles spread in polar angle (and circle position on products), avoiding the coordinate axes.
std::vector<Point> default_poles(const ManifoldModel& m, int count);

}  // namespace conflab
