#include <doctest.h>

#include <cmath>

#include "conflab/constants.hpp"
#include "conflab/quadrature.hpp"

using namespace conflab;

TEST_CASE("Gauss-Gegenbauer integrates the weight moments exactly") {
  for (double alpha : {0.0, 0.5, 1.0, 2.5}) {
    Rule1D g = gauss_gegenbauer(6, alpha);
    for (int p = 0; p <= 11; p += 2) {
      double s = 0.0;
      for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], p);
      // int t^p (1-t^2)^alpha = B((p+1)/2, alpha+1)
      double exact = std::exp(std::lgamma(0.5 * (p + 1)) + std::lgamma(alpha + 1) - std::lgamma(0.5 * (p + 1) + alpha + 1));
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("sphere rule reproduces sphere areas and polynomial moments") {
  for (int m = 1; m <= 7; ++m) {
    SphereRule r = sphere_rule(m, 6);
    double s = 0.0, s4 = 0.0;
    for (int i = 0; i < r.size(); ++i) {
      s += r.weights[i];
      s4 += r.weights[i] * std::pow(r.point(i)[0], 4);
    }
    CHECK(s == doctest::Approx(unit_sphere_area(m)).epsilon(1e-12));
    // int_{S^m} x_0^4 = 3 |S^m| / ((m+1)(m+3))
    CHECK(s4 == doctest::Approx(3.0 * unit_sphere_area(m) / ((m + 1) * (m + 3))).epsilon(1e-12));
  }
}

TEST_CASE("graded rule integrates a weakly singular function") {
  Rule1D g = graded_gauss(20, 16, 1.0);
  double s = 0.0;
  for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::log(g.x[i]);
  CHECK(s == doctest::Approx(-1.0).epsilon(1e-10));
}
