#include <doctest.h>

#include <cmath>
#include <sstream>

#include "conflab/error.hpp"
#include "conflab/spectrum.hpp"

using namespace conflab;

TEST_CASE("lambda1 of the conformal Laplacian") {
  CHECK(lambda1_L(*catalog_build(BackendKind::Sphere, 5)) == doctest::Approx(20.0));
  CHECK(lambda1_L(*catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{3, 3, 0})) == doctest::Approx(2.0));
  CHECK(lambda1_L(*catalog_build(BackendKind::Sphere, 3, CatalogParams{2.0, 0})) == doctest::Approx(6.0 / 4.0));
  for (auto [kind, n] : {std::pair{BackendKind::Sphere, 3}, {BackendKind::Sphere, 4}, {BackendKind::Sphere, 7},
                         {BackendKind::ProductS1S2, 3}, {BackendKind::ProductS1S3, 4}})
    CHECK(lambda1_L(*catalog_build(kind, n, {}, BasisSpec{2, 3, 0})) > 0.0);
}

TEST_CASE("eigen levels partition the modes") {
  auto m = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{3, 4, 0});
  for (OperatorTag tag : {OperatorTag::L, OperatorTag::P}) {
    auto sym = build_symbol(*m, tag);
    auto levels = eigen_levels(sym);
    int total = 0;
    for (size_t i = 0; i < levels.size(); ++i) {
      total += levels[i].multiplicity;
      for (int mode : levels[i].modes) CHECK(sym.eigenvalues[mode] == doctest::Approx(levels[i].value).epsilon(1e-12));
      if (i > 0) CHECK(levels[i].value > levels[i - 1].value);
    }
    CHECK(total == m->basis().size());
  }
  // Degree l on S^5 has multiplicity dim H_l.
  auto s5 = catalog_build(BackendKind::Sphere, 5, {}, BasisSpec{0, 3, 0});
  auto lv = eigen_levels(build_symbol(*s5, OperatorTag::L));
  REQUIRE(lv.size() == 4);
  for (int l = 0; l < 4; ++l) CHECK(lv[l].multiplicity == Harmonics::dimension(5, l));
}

TEST_CASE("Yamabe quotient") {
  for (int n : {3, 5, 6}) {
    auto m = catalog_build(BackendKind::Sphere, n);
    auto one = ScalarField::constant(m->basis_ptr(), 1.0);
    CHECK(yamabe_quotient(*m, one) == doctest::Approx(round_sphere_yamabe(n)).epsilon(1e-12));
  }
  auto m = catalog_build(BackendKind::Sphere, 5);
  std::vector<double> c(m->basis().size(), 0.0);
  c[0] = 1.0;
  c[3] = 0.3;
  c[9] = -0.2;
  auto phi = ScalarField::from_coefficients(m->basis_ptr(), c);
  CHECK(yamabe_quotient(*m, 3.7 * phi) == doctest::Approx(yamabe_quotient(*m, phi)).epsilon(1e-12));
  CHECK_THROWS_AS(yamabe_quotient(*m, ScalarField::constant(m->basis_ptr(), 0.0)), LabError);

  auto d = minimize_yamabe(*m, 20, 7);
  CHECK(d.value <= d.start_value);
  CHECK(d.value <= yamabe_quotient(*m, ScalarField::constant(m->basis_ptr(), 1.0)) * (1 + 1e-5));
  CHECK(d.value >= round_sphere_yamabe(5) * (1 - 1e-9));
}

TEST_CASE("Paneitz spectral claims") {
  auto s5 = paneitz_spectrum_check(catalog_build(BackendKind::Sphere, 5));
  REQUIRE(s5.green_sign.has_value());
  CHECK(*s5.green_sign == SignVerdict::Positive);
  CHECK(s5.claims_asserted);
  CHECK(s5.claims_hold());
  CHECK(s5.levels[s5.extremal].modes == std::vector<int>{0});
  CHECK(s5.extremal_min > 0.0);
  CHECK(s5.largest_negative == -1);
  CHECK(s5.kernel_dimension == 0);

  auto s3 = paneitz_spectrum_check(catalog_build(BackendKind::Sphere, 3));
  REQUIRE(s3.green_sign.has_value());
  CHECK(*s3.green_sign == SignVerdict::Negative);
  CHECK(s3.claims_hold());
  CHECK(s3.levels[s3.extremal].value == doctest::Approx(-15.0 / 16.0));

  auto t = paneitz_spectrum_check(catalog_build(BackendKind::ProductS1S3, 4, {}, BasisSpec{3, 3, 0}));
  CHECK(t.kernel_dimension == 1);
  CHECK(t.kernel_is_constants);
  CHECK_FALSE(t.green_sign.has_value());
  CHECK_FALSE(t.claims_asserted);

  std::ostringstream os;
  write_spectrum_csv(os, s5);
  CHECK(os.str().rfind("rank,eigenvalue,multiplicity,extremal_flag\n0,", 0) == 0);
}
