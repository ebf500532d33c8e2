#include <doctest.h>

#include <cmath>
#include <random>

#include "conflab/operators.hpp"

using namespace conflab;

namespace {

ScalarField unit_mode(const BasisPtr& b, int i) {
  std::vector<double> c(b->size(), 0.0);
  c[i] = 1.0;
  return ScalarField::from_coefficients(b, c);
}

ScalarField random_field(const BasisPtr& b, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> c(b->size());
  for (auto& v : c) v = nd(rng);
  return ScalarField::from_coefficients(b, c);
}

double inner(const ScalarField& a, const ScalarField& b) { return integrate(synthesize(a) * synthesize(b)); }

}  // namespace

TEST_CASE("conformal Laplacian symbol") {
  auto s5 = catalog_build(BackendKind::Sphere, 5);
  auto L = build_symbol(*s5, OperatorTag::L);
  CHECK(L.eigenvalues[0] == doctest::Approx(20));
  auto s3 = catalog_build(BackendKind::Sphere, 3);
  auto L3 = build_symbol(*s3, OperatorTag::L);
  CHECK(L3.eigenvalues[1] == doctest::Approx(30));

  auto p = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{3, 3, 0});
  auto Lp = build_symbol(*p, OperatorTag::L);
  for (int i = 0; i < p->basis().size(); ++i) {
    const auto& mi = p->basis().mode(i);
    CHECK(Lp.eigenvalues[i] == doctest::Approx(8.0 * (mi.k * mi.k + mi.l * (mi.l + 1)) + 2));
  }
}

TEST_CASE("Paneitz symbol factorizations") {
  auto p = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{3, 4, 0});
  auto P = build_symbol(*p, OperatorTag::P);
  for (int i = 0; i < p->basis().size(); ++i) {
    const auto& mi = p->basis().mode(i);
    const double k2 = mi.k * mi.k;
    CHECK(P.eigenvalues[i] == doctest::Approx((k2 + std::pow(mi.l - 0.5, 2)) * (k2 + std::pow(mi.l + 1.5, 2))));
  }
  for (int n = 3; n <= 7; ++n) {
    auto s = catalog_build(BackendKind::Sphere, n);
    auto Ps = build_symbol(*s, OperatorTag::P);
    const double A = n * (n - 2) / 4.0, B = (n + 2) * (n - 4) / 4.0;
    for (int i = 0; i < s->basis().size(); ++i) {
      const int l = s->basis().mode(i).l;
      const double mu = l * (l + n - 1.0);
      CHECK(Ps.eigenvalues[i] == doctest::Approx((mu + A) * (mu + B)));
    }
    CHECK(Ps.eigenvalues[0] == doctest::Approx(n * (n * n - 4.0) * (n - 4) / 16.0));
  }
  auto s5 = catalog_build(BackendKind::Sphere, 5);
  CHECK(apply_P(*s5, ScalarField::constant(s5->basis_ptr(), 1.0)).coefficients()[0] ==
        doctest::Approx(105.0 / 16 * std::sqrt(s5->volume())));
  auto p4 = catalog_build(BackendKind::ProductS1S3, 4, {}, BasisSpec{2, 2, 0});
  CHECK(build_symbol(*p4, OperatorTag::P).eigenvalues[0] == 0.0);
}

TEST_CASE("symbols agree with the pointwise operators") {
  std::mt19937_64 rng(5);
  struct Case {
    BackendKind kind;
    int n;
    CatalogParams params;
    BasisSpec spec;
  };
  for (const Case& cs : {Case{BackendKind::Sphere, 3, {}, {0, 4, 0}}, Case{BackendKind::Sphere, 5, {1.3, 0}, {0, 4, 0}},
                         Case{BackendKind::Sphere, 4, {}, {0, 3, 0}}, Case{BackendKind::ProductS1S2, 3, {1.0, 5.0}, {3, 3, 0}},
                         Case{BackendKind::ProductS1S3, 4, {}, {2, 3, 0}}}) {
    auto m = catalog_build(cs.kind, cs.n, cs.params, cs.spec);
    auto L = build_symbol(*m, OperatorTag::L), P = build_symbol(*m, OperatorTag::P);
    std::uniform_int_distribution<int> pick(0, m->basis().size() - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int i = pick(rng);
      auto f = unit_mode(m->basis_ptr(), i).as_function();
      const Point& x = m->basis().node((trial * 37) % m->basis().node_count());
      const double phi = f->value(x);
      for (auto [tag, sym] : {std::pair{OperatorTag::L, &L}, {OperatorTag::P, &P}}) {
        const double direct = apply_at(*m, tag, *f, x);
        const double scale = std::abs(sym->eigenvalues[i]) * std::sqrt(1.0 / m->volume()) + 1e-300;
        worst = std::max(worst, std::abs(direct - sym->eigenvalues[i] * phi) / scale);
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("quadratic form matches the Paneitz pairing") {
  std::mt19937_64 rng(9);
  for (auto [kind, n] : {std::pair{BackendKind::Sphere, 5}, {BackendKind::Sphere, 3}, {BackendKind::ProductS1S2, 3},
                         {BackendKind::ProductS1S3, 4}}) {
    auto m = catalog_build(kind, n, {}, BasisSpec{2, 3, 0});
    for (int trial = 0; trial < 10; ++trial) {
      auto u = random_field(m->basis_ptr(), rng), v = random_field(m->basis_ptr(), rng);
      const double e = quadratic_form_E(*m, u, v);
      const double pair = inner(apply_P(*m, u), v);
      CHECK(e == doctest::Approx(pair).epsilon(1e-8));
      CHECK(e == doctest::Approx(quadratic_form_E(*m, v, u)).epsilon(1e-12));
    }
  }
  auto s5 = catalog_build(BackendKind::Sphere, 5);
  auto one = ScalarField::constant(s5->basis_ptr(), 1.0);
  CHECK(quadratic_form_E(*s5, one, one) == doctest::Approx(105.0 / 16 * s5->volume()));
}
