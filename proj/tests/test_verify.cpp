#include <doctest.h>

#include <cmath>

#include "conflab/error.hpp"
#include "conflab/verify.hpp"

using namespace conflab;

namespace {

Point generic_pole(const ManifoldModel& m) {
  Point p;
  const int N = m.is_product() ? m.n() : m.n() + 1;
  p.x.assign(N, 0.0);
  p.x[0] = 0.6;
  p.x[N - 1] = 0.8;
  p.t = 0.3;
  return p;
}

double worst_relative(const VerificationReport& r) {
  double w = 0.0;
  for (const auto& c : r.checks) w = std::max(w, c.residual / c.detail.at("scale").get<double>());
  return w;
}

}  // namespace

TEST_CASE("test-function set") {
  auto m = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{2, 3, 0});
  auto a = standard_test_functions(*m, 9), b = standard_test_functions(*m, 9);
  REQUIRE(a.size() == 5);
  CHECK(a[4].coefficients() == b[4].coefficients());
  CHECK(a[0].band().sphere == 0);
}

TEST_CASE("weak identity on spheres") {
  for (int n : {3, 5}) {
    auto m = catalog_build(BackendKind::Sphere, n, {}, BasisSpec{0, 3, 0});
    auto r = check_weak_identity(m, generic_pole(*m), standard_test_functions(*m, 1));
    CHECK(r.passed());
    CHECK(r.checks.size() == 5);
    CHECK(r.checks[0].eq == (n == 3 ? "n3-identity" : "weak-identity"));
    CHECK(worst_relative(r) < 1e-9);
    for (const auto& c : r.checks) CHECK(std::abs(c.detail.at("ricci_term").get<double>()) < 1e-12);
  }
  auto s4 = catalog_build(BackendKind::Sphere, 4, {}, BasisSpec{0, 2, 0});
  CHECK_THROWS_AS(check_weak_identity(s4, generic_pole(*s4), standard_test_functions(*s4, 1)), LabError);
}

TEST_CASE("weak identity on S1 x S2 converges with the Green cutoff") {
  auto m = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{2, 3, 0});
  auto phis = standard_test_functions(*m, 4);
  double prev = INFINITY;
  for (int L : {3, 6}) {
    VerifySettings s;
    s.green.L = L;
    auto r = check_weak_identity(m, generic_pole(*m), phis, s);
    CHECK(r.passed());
    const double w = worst_relative(r);
    CHECK(w < prev);
    prev = w;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("four-dimensional identity and total Q") {
  auto s4 = catalog_build(BackendKind::Sphere, 4, {}, BasisSpec{0, 3, 0});
  auto r = check_4d_identity(s4, generic_pole(*s4), standard_test_functions(*s4, 2));
  CHECK(r.passed());
  CHECK(worst_relative(r) < 1e-9);

  auto tq = check_total_q(ConformalFactor(s4), generic_pole(*s4));
  CHECK(tq.passed());
  CHECK(tq.detail.at("verdict") == "EQUALITY");
  CHECK(tq.detail.at("integral_q").get<double>() == doctest::Approx(16 * kPi * kPi).epsilon(1e-12));

  auto t = catalog_build(BackendKind::ProductS1S3, 4, {}, BasisSpec{1, 2, 0});
  auto tt = check_total_q(ConformalFactor(t), generic_pole(*t));
  CHECK(tt.passed());
  CHECK(tt.detail.at("verdict") == "STRICT");
  CHECK(tt.detail.at("integral_q").get<double>() == 0.0);
  CHECK(tt.detail.at("defect").get<double>() == doctest::Approx(16 * kPi * kPi).epsilon(1e-8));

  auto s3 = catalog_build(BackendKind::Sphere, 3, {}, BasisSpec{0, 2, 0});
  CHECK_THROWS_AS(check_total_q(ConformalFactor(s3), generic_pole(*s3)), LabError);
}

TEST_CASE("total Q is a conformal invariant on S4") {
  auto s4 = catalog_build(BackendKind::Sphere, 4, {}, BasisSpec{0, 4, 2});
  std::mt19937_64 rng(77);
  for (int k = 0; k < 5; ++k) {
    auto f = ConformalFactor::from_log(s4, random_log_factor(*s4, rng, 0.1));
    auto r = check_total_q(f, generic_pole(*s4));
    CHECK(r.passed());
    CHECK(r.detail.at("sum").get<double>() == doctest::Approx(16 * kPi * kPi).epsilon(1e-3));
  }
}

TEST_CASE("covariance laws") {
  auto s4 = catalog_build(BackendKind::Sphere, 4, {}, BasisSpec{0, 2, 0});
  auto r = check_covariance(s4, 3, 11);
  CHECK(r.passed());
  CHECK(r.checks.size() == 5);
  // The blown-up Ricci density is non-trivial on products.
  auto p = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{1, 2, 0});
  auto rp = check_covariance(p, 3, 12);
  CHECK(rp.passed());
  bool seen = false;
  for (const auto& c : rp.checks)
    if (c.eq == "measure-identity") {
      seen = true;
      CHECK(c.residual < 1e-8);
    }
  CHECK(seen);
}

TEST_CASE("sign theorems are gated on the hypothesis ledger") {
  auto s5 = catalog_build(BackendKind::Sphere, 5, {}, BasisSpec{0, 2, 0});
  auto r5 = check_sign_theorems(ConformalFactor(s5), default_poles(*s5, 2));
  CHECK(r5.passed());
  CHECK(r5.checks[0].asserted);
  CHECK(r5.checks[0].eq == "sign-positive");

  auto p = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{2, 3, 0});
  auto rp = check_sign_theorems(ConformalFactor(p), default_poles(*p, 2));
  CHECK_FALSE(rp.hypotheses.q_nonnegative_nontrivial);
  CHECK_FALSE(rp.checks[0].asserted);
  CHECK(rp.passed());

  auto t = catalog_build(BackendKind::ProductS1S3, 4, {}, BasisSpec{1, 2, 0});
  auto rt = check_sign_theorems(ConformalFactor(t), default_poles(*t, 1));
  CHECK_FALSE(rt.checks[0].asserted);
  CHECK(rt.checks[0].detail.contains("error"));
}

TEST_CASE("report JSON layout") {
  auto s3 = catalog_build(BackendKind::Sphere, 3, {}, BasisSpec{0, 2, 0});
  auto j = check_sign_theorems(ConformalFactor(s3), default_poles(*s3, 1)).to_json();
  for (const char* key : {"suite", "backend", "checks", "hypotheses", "resolution", "runtime_s"}) CHECK(j.contains(key));
  for (const char* key : {"eq", "residual", "tol", "pass"}) CHECK(j["checks"][0].contains(key));
}
