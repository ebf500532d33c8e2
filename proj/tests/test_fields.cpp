#include <doctest.h>

#include <cmath>
#include <random>

#include "conflab/error.hpp"
#include "conflab/field.hpp"

using namespace conflab;

namespace {

BasisPtr sphere_basis(int n, int L) { return std::make_shared<ModeBasis>(BackendKind::Sphere, n, BasisSpec{0, L, 0}, 0.0, 1.0); }
BasisPtr product_basis(int n, int K, int L, double ell = 2 * kPi) {
  return std::make_shared<ModeBasis>(n == 3 ? BackendKind::ProductS1S2 : BackendKind::ProductS1S3, n, BasisSpec{K, L, 0}, ell,
                                     1.0);
}

std::vector<double> random_coefficients(int size, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> c(size);
  for (auto& v : c) v = nd(rng);
  return c;
}

}  // namespace

TEST_CASE("harmonic counts match dimension formula") {
  for (int m = 2; m <= 7; ++m) {
    Harmonics h(m, 4);
    int total = 0;
    for (int l = 0; l <= 4; ++l) {
      total += Harmonics::dimension(m, l);
      CHECK(h.count_up_to(l) == total);
    }
  }
  CHECK(Harmonics::dimension(2, 3) == 7);
  CHECK(Harmonics::dimension(3, 2) == 9);
  CHECK(Harmonics::dimension(4, 1) == 5);
}

TEST_CASE("basis is orthonormal under quadrature") {
  for (auto b : {sphere_basis(3, 4), sphere_basis(5, 3), product_basis(3, 3, 3), product_basis(4, 2, 2)}) {
    const auto& tab = b->table();
    const int S = b->size();
    double worst = 0.0;
    for (int i = 0; i < S; ++i)
      for (int k = i; k < S; ++k) {
        double s = 0.0;
        for (int j = 0; j < b->node_count(); ++j) s += b->weights()[j] * tab[j * S + i] * tab[j * S + k];
        worst = std::max(worst, std::abs(s - (i == k ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("synthesize: constant and degree-1 harmonic on S^2 factor") {
  auto b = product_basis(3, 2, 3);
  auto c = synthesize(ScalarField::constant(b, 2.5));
  for (double v : c.grid()) CHECK(v == doctest::Approx(2.5).epsilon(1e-13));
  // Degree-1 harmonic with chain (1,0): proportional to x_2 = cos(theta); normalized sqrt(3/(4 pi)).
  int h = -1;
  for (int i = 0; i < b->harmonics().size(); ++i)
    if (b->harmonics().mode(i).degree() == 1 && b->harmonics().mode(i).d[1] == 0) h = i;
  REQUIRE(h >= 0);
  std::vector<double> coef(b->size(), 0.0);
  coef[b->index_of(0, h)] = 1.0;
  auto f = synthesize(ScalarField::from_coefficients(b, coef));
  for (int j = 0; j < b->node_count(); ++j) {
    double expect = std::sqrt(3.0 / (4.0 * kPi)) * b->node(j).x[2] / std::sqrt(2.0 * kPi);
    CHECK(f.grid()[j] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("round trip, Parseval and aliasing guard") {
  for (auto b : {sphere_basis(4, 4), product_basis(3, 4, 3)}) {
    auto coef = random_coefficients(b->size(), 11);
    auto f = ScalarField::from_coefficients(b, coef);
    auto g = synthesize(f);
    auto grid_only = ScalarField::from_grid(b, g.grid(), g.band());
    auto back = analyze(grid_only);
    double err = 0.0, norm2 = 0.0;
    for (int i = 0; i < b->size(); ++i) {
      err = std::max(err, std::abs(back.coefficients()[i] - coef[i]));
      norm2 += coef[i] * coef[i];
    }
    CHECK(err < 1e-10);
    CHECK(integrate(g * g) == doctest::Approx(norm2).epsilon(1e-10));
    CHECK_THROWS_AS(analyze(g * g), LabError);
    auto zero = analyze(ScalarField::from_grid(b, std::vector<double>(b->node_count(), 0.0), Band{0, 0}));
    for (double v : zero.coefficients()) CHECK(v == 0.0);
  }
}

TEST_CASE("integrate constants and nonconstant modes") {
  auto s4 = sphere_basis(4, 2);
  CHECK(integrate(ScalarField::constant(s4, 1.0)) == doctest::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-12));
  auto p = product_basis(3, 2, 2);
  CHECK(integrate(ScalarField::constant(p, 1.0)) == doctest::Approx(2 * kPi * 4 * kPi).epsilon(1e-12));
  for (int i = 1; i < p->size(); ++i) {
    std::vector<double> c(p->size(), 0.0);
    c[i] = 1.0;
    CHECK(std::abs(integrate(ScalarField::from_coefficients(p, c))) < 1e-12);
  }
}

TEST_CASE("differentiate: Laplacian eigenvalues, Hessian trace, integration by parts") {
  auto b = product_basis(3, 3, 3, 5.0);
  for (int i = 0; i < b->size(); i += 7) {
    std::vector<double> c(b->size(), 0.0);
    c[i] = 1.0;
    auto f = ScalarField::from_coefficients(b, c);
    auto lap = synthesize(laplacian(f));
    auto tr = hessian(f).trace();
    auto fg = synthesize(f);
    const double k = b->mode(i).k, l = b->mode(i).l;
    const double expect = -(std::pow(2 * kPi * k / 5.0, 2) + l * (l + 1));
    for (int j = 0; j < b->node_count(); ++j) {
      CHECK(lap.grid()[j] == doctest::Approx(expect * fg.grid()[j]).epsilon(1e-10).scale(1.0));
      CHECK(tr.grid()[j] == doctest::Approx(lap.grid()[j]).epsilon(1e-10).scale(1.0));
    }
  }
  auto cf = ScalarField::constant(b, 3.0);
  CHECK(std::abs(integrate(gradient_norm_squared(cf))) < 1e-20);
  auto u = ScalarField::from_coefficients(b, random_coefficients(b->size(), 3));
  auto v = ScalarField::from_coefficients(b, random_coefficients(b->size(), 4));
  double a1 = integrate(synthesize(laplacian(u)) * synthesize(v));
  double a2 = integrate(synthesize(u) * synthesize(laplacian(v)));
  CHECK(a1 == doctest::Approx(a2).epsilon(1e-10));
  // int |grad u|^2 = - int u Lap u
  CHECK(integrate(gradient_norm_squared(u)) == doctest::Approx(-integrate(synthesize(u) * synthesize(laplacian(u)))).epsilon(1e-10));
}

TEST_CASE("spectral circle derivative matches centered differences at second order") {
  // f = sum of low Fourier modes; the d^2/dt^2 error of centered differences on the
  // trapezoid grid decays like h^2 across three resolutions.
  std::vector<double> errs;
  for (int K : {8, 16, 32}) {
    auto b = product_basis(3, K, 1, 2 * kPi);
    std::vector<double> c(b->size(), 0.0);
    const int H = b->harmonics().size();
    c[b->index_of(1, 0)] = 1.0;   // cos t
    c[b->index_of(4, 0)] = 0.5;   // sin 2t
    c[b->index_of(5, 0)] = 0.25;  // cos 3t
    (void)H;
    auto f = synthesize(ScalarField::from_coefficients(b, c));
    auto lap = synthesize(laplacian(f));
    const int nt = b->circle_nodes();
    const int ns = b->node_count() / nt;
    const double h = 2 * kPi / nt;
    double worst = 0.0;
    for (int a = 0; a < nt; ++a) {
      int j = a * ns, jp = ((a + 1) % nt) * ns, jm = ((a + nt - 1) % nt) * ns;
      double fd = (f.grid()[jp] - 2 * f.grid()[j] + f.grid()[jm]) / (h * h);
      worst = std::max(worst, std::abs(fd - lap.grid()[j]));
    }
    errs.push_back(worst);
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.15));
}
