#pragma once

#include <vector>

namespace conflab {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss rule for the weight (1 - t^2)^alpha on [-1, 1], alpha > -1.
Rule1D gauss_gegenbauer(int npoints, double alpha);

inline Rule1D gauss_legendre(int npoints) { return gauss_gegenbauer(npoints, 0.0); }

// Gauss-Legendre on [a, b].
Rule1D gauss_legendre(int npoints, double a, double b);

// Geometrically graded composite Gauss-Legendre on [0, b], refined toward 0.
Rule1D graded_gauss(int panels, int per_panel, double b, double ratio = 0.15);

// Trapezoid rule on a period [0, length) with n equispaced nodes.
Rule1D trapezoid(int n, double length);

// Tensor rule on the unit sphere S^m in R^{m+1}, exact for polynomials of degree <= degree.
// Points are flattened: points[i * (m + 1) + a].
struct SphereRule {
  int m = 0;
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
  const double* point(int i) const { return points.data() + static_cast<size_t>(i) * (m + 1); }
};

SphereRule sphere_rule(int m, int degree);

}  // namespace conflab
