#pragma once

// Points on catalog manifolds and conformally flat charts around them.
//
// Sphere points carry a unit vector x in R^{n+1}. Product points S^1 x S^m carry
// a circle coordinate t in [0, ell) and a unit vector x in R^{m+1}. All charts
// write the model metric as e^{2W} delta in coordinates y centered at the point.

#include <cmath>
#include <vector>

#include "conflab/jet.hpp"

namespace conflab {

template <class T>
struct GenericPoint {
  T t{};
  std::vector<T> x;
};

using Point = GenericPoint<double>;

template <int O>
struct Chart {
  int n = 0;
  GenericPoint<Jet<O>> p;
  Jet<O> W;
};

// Orthonormal basis of the complement of unit vector x0 (columns E[i], i < dim - 1).
std::vector<std::vector<double>> tangent_basis(const std::vector<double>& x0);

// Inverse stereographic chart of the unit sphere centered at x0, scaled by `scale`.
template <int O>
Chart<O> sphere_chart(const std::vector<double>& x0, double scale) {
  const int N = static_cast<int>(x0.size());
  const int n = N - 1;
  auto E = tangent_basis(x0);
  Chart<O> c;
  c.n = n;
  Jet<O> s2(n, 0.0);
  std::vector<Jet<O>> y;
  for (int i = 0; i < n; ++i) {
    y.push_back(Jet<O>::variable(n, i, 0.0));
    s2 += y[i] * y[i];
  }
  Jet<O> inv = 1.0 / (1.0 + s2);
  Jet<O> one_minus = 1.0 - s2;
  for (int a = 0; a < N; ++a) {
    Jet<O> xa = one_minus * x0[a];
    for (int i = 0; i < n; ++i) xa.axpy(2.0 * E[i][a], y[i]);
    c.p.x.push_back(xa * inv);
  }
  c.p.t = Jet<O>(n, 0.0);
  c.W = std::log(2.0 * scale) - log(1.0 + s2);
  return c;
}

// Chart of S^1 x S^m around (t0, omega0): z = omega0 + y in R^{m+1},
// t = t0 + log|z|, omega = z / |z|, metric |z|^{-2} delta (times scale^2).
template <int O>
Chart<O> product_chart(double t0, const std::vector<double>& omega0, double scale) {
  const int n = static_cast<int>(omega0.size());
  Chart<O> c;
  c.n = n;
  Jet<O> r2(n, 0.0);
  std::vector<Jet<O>> z;
  for (int i = 0; i < n; ++i) {
    z.push_back(Jet<O>::variable(n, i, omega0[i]));
    r2 += z[i] * z[i];
  }
  Jet<O> lr2 = log(r2);
  Jet<O> rinv = exp(lr2 * -0.5);
  for (int i = 0; i < n; ++i) c.p.x.push_back(z[i] * rinv);
  c.p.t = lr2 * 0.5 + t0;
  c.W = lr2 * -0.5 + std::log(scale);
  return c;
}

}  // namespace conflab
