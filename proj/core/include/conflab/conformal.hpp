#pragma once

#include <random>
#include <string>
#include <vector>

#include "conflab/manifold.hpp"
#include "conflab/pointwise.hpp"

namespace conflab {

// How a positive factor rho encodes the conformal metric g~:
//   Metric:      g~ = rho^{4/(n-2)} g  (conformal Laplacian weight)
//   Paneitz:     g~ = rho^{4/(n-4)} g  (Paneitz weight, n != 4)
//   Exponential: g~ = rho^2 g = e^{2w} g with w = log rho
enum class Convention { Metric, Paneitz, Exponential };

std::string to_string(Convention c);

// Conformal change g~ = e^{2w} g of a catalog model, stored through its log-factor w.
class ConformalFactor {
 public:
  explicit ConformalFactor(ModelPtr base);
  static ConformalFactor from_log(ModelPtr base, FunctionPtr w);
  // Throws NONPOSITIVE_FACTOR if rho <= 0 at a quadrature node.
  static ConformalFactor from_rho(ModelPtr base, FunctionPtr rho, Convention c);

  const ManifoldModel& base() const { return *base_; }
  const ModelPtr& base_ptr() const { return base_; }
  const FunctionPtr& log_factor() const { return w_; }
  bool is_identity() const { return !w_; }
  Convention declared() const { return declared_; }

  // rho = e^{k w} with k = (n-2)/2, (n-4)/2 or 1.
  static double exponent(int n, Convention c);
  double w(const Point& p) const { return w_ ? w_->value(p) : 0.0; }
  double rho(const Point& p, Convention c) const { return std::exp(exponent(base_->n(), c) * w(p)); }
  ScalarField rho_field(Convention c) const;
  // The three conventions describe the same metric at every node.
  bool consistent(double tol = 1e-12) const;

  template <int O>
  Jet<O> w_jet(const Chart<O>& c) const {
    if (!w_) return Jet<O>(c.n, 0.0);
    return w_->jet(c);
  }
  template <int O>
  pointwise::Metric<O> metric_at(const Chart<O>& c) const {
    return pointwise::Metric<O>(c.W + w_jet(c));
  }

 private:
  ModelPtr base_;
  FunctionPtr w_;
  Convention declared_ = Convention::Exponential;
};

// g~ = e^{2(w1 + w2)} g.
ConformalFactor compose(const ConformalFactor& f, FunctionPtr extra_w);

// Ricci tensor of the conformal metric, frame components in the base metric frame at each node.
SymTensorField conformal_ricci(const ManifoldModel& m, const ConformalFactor& f);
// Q of the conformal metric through the covariance laws of P.
ScalarField conformal_q(const ManifoldModel& m, const ConformalFactor& f);
// Q of the conformal metric from the curvature formula applied to the transformed metric.
ScalarField conformal_q_direct(const ManifoldModel& m, const ConformalFactor& f);

double q_at(const ConformalFactor& f, const Point& p);

// Conformal diffeomorphism of S^n: R2 o D_lambda o R1 with D_lambda a stereographic dilation.
class MoebiusMap {
 public:
  MoebiusMap(int n, double lambda, std::vector<double> R1, std::vector<double> R2);
  static MoebiusMap random(int n, std::mt19937_64& rng, double max_log_lambda = 0.6);

  int n() const { return n_; }
  double lambda() const { return lambda_; }
  Point apply(const Point& p) const;
  // Phi^* g = e^{2w} g.
  FunctionPtr log_factor() const;

  template <class T>
  T log_factor_eval(const GenericPoint<T>& p) const {
    const int N = n_ + 1;
    T yN = p.x[0] * R1_[(N - 1) * N];
    for (int a = 1; a < N; ++a) yN += p.x[a] * R1_[(N - 1) * N + a];
    using std::log;
    return std::log(2.0 * lambda_) - log(yN * -(1.0 - lambda_ * lambda_) + (1.0 + lambda_ * lambda_));
  }

 private:
  int n_;
  double lambda_;
  std::vector<double> R1_, R2_;  // row-major (n+1) x (n+1)
};

}  // namespace conflab
