#include <doctest.h>

#include <cmath>

#include "conflab/jet.hpp"

using namespace conflab;

TEST_CASE("jet layout sizes match binomial counts") {
  CHECK(JetLayout::get(3, 4).size == 35);
  CHECK(JetLayout::get(7, 4).size == 330);
  CHECK(JetLayout::get(5, 2).size == 21);
  CHECK(JetLayout::get(4, 4).triples.size() == static_cast<size_t>(binomial(12, 4)));
}

TEST_CASE("jet arithmetic reproduces derivatives of a bivariate function") {
  // f(x, y) = exp(x) * sin(y) / (1 + x^2 + y^2) at (0.3, -0.4)
  const double x0 = 0.3, y0 = -0.4;
  auto x = Jet<4>::variable(2, 0, x0);
  auto y = Jet<4>::variable(2, 1, y0);
  Jet<4> f = exp(x) * sin(y) / (1.0 + x * x + y * y);
  auto fd = [&](double a, double b) { return std::exp(a) * std::sin(b) / (1 + a * a + b * b); };
  const double h = 1e-4;
  CHECK(f.value() == doctest::Approx(fd(x0, y0)).epsilon(1e-14));
  CHECK(f.grad(0) == doctest::Approx((fd(x0 + h, y0) - fd(x0 - h, y0)) / (2 * h)).epsilon(1e-7));
  double fxy = (fd(x0 + h, y0 + h) - fd(x0 + h, y0 - h) - fd(x0 - h, y0 + h) + fd(x0 - h, y0 - h)) / (4 * h * h);
  CHECK(f.hess(0, 1) == doctest::Approx(fxy).epsilon(1e-6));
  // Fourth derivative through repeated d(): d^4/dx^4 of exp(x) = exp(x).
  auto e = exp(x);
  CHECK(e.d(0).d(0).d(0).d(0).value() == doctest::Approx(std::exp(x0)).epsilon(1e-13));
}

TEST_CASE("jet elementary functions agree with closed forms") {
  auto x = Jet<4>::variable(1, 0, 0.7);
  auto p = pow(x, 2.5);
  CHECK(p.d(0).d(0).d(0).value() == doctest::Approx(2.5 * 1.5 * 0.5 * std::pow(0.7, -0.5)));
  auto l = log(x);
  CHECK(l.d(0).d(0).value() == doctest::Approx(-1.0 / (0.7 * 0.7)));
  auto ch = cosh(x) * cosh(x) - sinh(x) * sinh(x);
  for (int i = 1; i < ch.size(); ++i) CHECK(std::abs(ch[i]) < 1e-14);
  auto one = sin(x) * sin(x) + cos(x) * cos(x);
  CHECK(one.value() == doctest::Approx(1.0));
  for (int i = 1; i < one.size(); ++i) CHECK(std::abs(one[i]) < 1e-14);
}
