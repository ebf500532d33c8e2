#pragma once

// Curvature and conformally covariant operators at the origin of a chart in which
// the metric is e^{2W} delta. Every routine returns a jet; only its low-order part
// is exact (an operator of order k consumes k orders of the input jets).

#include <vector>

#include "conflab/constants.hpp"
#include "conflab/jet.hpp"

namespace conflab::pointwise {

template <int O>
struct Metric {
  int n;
  Jet<O> W;
  std::vector<Jet<O>> dW;
  Jet<O> em2W;

  explicit Metric(const Jet<O>& w) : n(w.nvars()), W(w), em2W(exp(w * -2.0)) {
    for (int i = 0; i < n; ++i) dW.push_back(w.d(i));
  }
};

template <int O>
Jet<O> laplacian(const Metric<O>& g, const Jet<O>& f) {
  Jet<O> s(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    Jet<O> fi = f.d(i);
    s += fi.d(i);
    s.axpy(g.n - 2.0, g.dW[i] * fi);
  }
  return g.em2W * s;
}

// div of the vector field with coordinate components X^i.
template <int O>
Jet<O> divergence(const Metric<O>& g, const std::vector<Jet<O>>& X) {
  Jet<O> s(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    s += X[i].d(i);
    s.axpy(g.n, g.dW[i] * X[i]);
  }
  return s;
}

// Coordinate components Rc_ij, row-major n x n.
template <int O>
std::vector<Jet<O>> ricci(const Metric<O>& g) {
  const int n = g.n;
  Jet<O> lap0(n, 0.0), grad2(n, 0.0);
  std::vector<Jet<O>> H(n * n, Jet<O>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    grad2 += g.dW[i] * g.dW[i];
    for (int j = i; j < n; ++j) {
      H[i * n + j] = g.dW[i].d(j);
      if (j == i) lap0 += H[i * n + j];
    }
  }
  std::vector<Jet<O>> rc(n * n, Jet<O>(n, 0.0));
  Jet<O> trace_part = lap0 + grad2 * (n - 2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet<O> v = (H[i * n + j] - g.dW[i] * g.dW[j]) * (-(n - 2.0));
      if (i == j) v -= trace_part;
      rc[i * n + j] = v;
      rc[j * n + i] = v;
    }
  return rc;
}

template <int O>
Jet<O> scalar_curvature(const Metric<O>& g, const std::vector<Jet<O>>& rc) {
  Jet<O> s(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) s += rc[i * g.n + i];
  return g.em2W * s;
}

template <int O>
Jet<O> ricci_norm2(const Metric<O>& g, const std::vector<Jet<O>>& rc) {
  Jet<O> s(g.n, 0.0);
  for (const auto& v : rc) s += v * v;
  return g.em2W * g.em2W * s;
}

// Q = -Lap R / (2(n-1)) - 2 |Rc|^2 / (n-2)^2 + c_n R^2 (valid for every n >= 3).
template <int O>
Jet<O> q_curvature(const Metric<O>& g) {
  const int n = g.n;
  auto rc = ricci(g);
  Jet<O> R = scalar_curvature(g, rc);
  Jet<O> q = laplacian(g, R) * (-1.0 / (2.0 * (n - 1)));
  q.axpy(-q_ricci_coefficient(n), ricci_norm2(g, rc));
  q.axpy(q_scalar_coefficient(n), R * R);
  return q;
}

template <int O>
Jet<O> conformal_laplacian(const Metric<O>& g, const Jet<O>& f) {
  auto rc = ricci(g);
  Jet<O> R = scalar_curvature(g, rc);
  return laplacian(g, f) * -conformal_laplacian_coefficient(g.n) + R * f;
}

template <int O>
Jet<O> paneitz(const Metric<O>& g, const Jet<O>& f) {
  const int n = g.n;
  auto rc = ricci(g);
  Jet<O> R = scalar_curvature(g, rc);
  std::vector<Jet<O>> df;
  for (int i = 0; i < n; ++i) df.push_back(f.d(i));

  Jet<O> out = laplacian(g, laplacian(g, f));
  Jet<O> em4W = g.em2W * g.em2W;
  std::vector<Jet<O>> V(n, Jet<O>(n, 0.0)), X(n, Jet<O>(n, 0.0));
  Jet<O> Rs = R * g.em2W;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) V[i] += rc[i * n + k] * df[k];
    V[i] = V[i] * em4W;
    X[i] = Rs * df[i];
  }
  out.axpy(4.0 / (n - 2.0), divergence(g, V));
  out.axpy(-paneitz_scalar_coefficient(n), divergence(g, X));
  if (n != 4) out.axpy(0.5 * (n - 4.0), q_curvature(g) * f);
  return out;
}

// Orthonormal-frame components of the Ricci tensor of e^{2W} delta, measured in
// the frame of the reference metric e^{2 W_ref} delta at the origin.
template <int O>
std::vector<double> ricci_frame(const Metric<O>& g, double W_ref0) {
  auto rc = ricci(g);
  const double e = std::exp(-2.0 * W_ref0);
  std::vector<double> out(rc.size());
  for (size_t i = 0; i < rc.size(); ++i) out[i] = e * rc[i].value();
  return out;
}

}  // namespace conflab::pointwise
