#include "conflab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "conflab/constants.hpp"
#include "conflab/error.hpp"

namespace conflab {

Rule1D gauss_gegenbauer(int npoints, double alpha) {
  if (npoints < 1 || alpha <= -1.0) throw LabError(ErrorCode::ConfigInvalid, "bad Gauss rule request");
  Rule1D r;
  if (npoints == 1) {
    r.x = {0.0};
    r.w = {std::sqrt(kPi) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5)};
    return r;
  }
  // Golub-Welsch on the symmetric Jacobi matrix of the Gegenbauer weight.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npoints, npoints);
  for (int k = 1; k < npoints; ++k) {
    double b2 = k * (k + 2.0 * alpha) / ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0));
    J(k, k - 1) = J(k - 1, k) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp(0.5 * std::log(kPi) + std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
  r.x.resize(npoints);
  r.w.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    r.x[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v * v;
  }
  // Symmetrize to remove eigensolver noise.
  for (int i = 0; i < npoints / 2; ++i) {
    int j = npoints - 1 - i;
    double x = 0.5 * (r.x[j] - r.x[i]);
    double w = 0.5 * (r.w[i] + r.w[j]);
    r.x[i] = -x;
    r.x[j] = x;
    r.w[i] = r.w[j] = w;
  }
  if (npoints % 2 == 1) r.x[npoints / 2] = 0.0;
  return r;
}

Rule1D gauss_legendre(int npoints, double a, double b) {
  Rule1D g = gauss_legendre(npoints);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < npoints; ++i) {
    g.x[i] = c + h * g.x[i];
    g.w[i] *= h;
  }
  return g;
}

Rule1D graded_gauss(int panels, int per_panel, double b, double ratio) {
  Rule1D out;
  Rule1D g = gauss_legendre(per_panel);
  double hi = b;
  for (int p = 0; p < panels; ++p) {
    double lo = (p == panels - 1) ? 0.0 : hi * ratio;
    const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
    for (int i = 0; i < per_panel; ++i) {
      out.x.push_back(c + h * g.x[i]);
      out.w.push_back(h * g.w[i]);
    }
    hi = lo;
  }
  return out;
}

Rule1D trapezoid(int n, double length) {
  Rule1D r;
  for (int i = 0; i < n; ++i) {
    r.x.push_back(length * i / n);
    r.w.push_back(length / n);
  }
  return r;
}

SphereRule sphere_rule(int m, int degree) {
  if (m < 1) throw LabError(ErrorCode::UnsupportedDimension, "sphere rule needs m >= 1");
  if (degree < 0) degree = 0;
  SphereRule cur;
  cur.m = 1;
  {
    const int np = degree + 1;
    for (int i = 0; i < np; ++i) {
      double a = 2.0 * kPi * i / np;
      cur.points.push_back(std::cos(a));
      cur.points.push_back(std::sin(a));
      cur.weights.push_back(2.0 * kPi / np);
    }
  }
  for (int j = 2; j <= m; ++j) {
    // S^j point: (sqrt(1 - t^2) * omega, t) with t Gauss-Gegenbauer for (1 - t^2)^{(j-2)/2}.
    Rule1D g = gauss_gegenbauer(degree / 2 + 1, 0.5 * (j - 2));
    SphereRule next;
    next.m = j;
    for (size_t a = 0; a < g.x.size(); ++a) {
      const double t = g.x[a], st = std::sqrt(1.0 - t * t);
      for (int i = 0; i < cur.size(); ++i) {
        const double* p = cur.point(i);
        for (int c = 0; c < j; ++c) next.points.push_back(st * p[c]);
        next.points.push_back(t);
        next.weights.push_back(g.w[a] * cur.weights[i]);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace conflab
