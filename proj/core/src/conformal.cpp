#include "conflab/conformal.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "conflab/error.hpp"

namespace conflab {

std::string to_string(Convention c) {
  switch (c) {
    case Convention::Metric: return "rho^(4/(n-2))";
    case Convention::Paneitz: return "rho^(4/(n-4))";
    case Convention::Exponential: return "e^(2w)";
  }
  return "unknown";
}

ConformalFactor::ConformalFactor(ModelPtr base) : base_(std::move(base)) {}

ConformalFactor ConformalFactor::from_log(ModelPtr base, FunctionPtr w) {
  ConformalFactor f(std::move(base));
  f.w_ = std::move(w);
  return f;
}

double ConformalFactor::exponent(int n, Convention c) {
  switch (c) {
    case Convention::Metric: return 0.5 * (n - 2);
    case Convention::Paneitz:
      if (n == 4) throw LabError(ErrorCode::UnsupportedDimension, "Paneitz weight undefined for n = 4");
      return 0.5 * (n - 4);
    case Convention::Exponential: return 1.0;
  }
  return 1.0;
}

ConformalFactor ConformalFactor::from_rho(ModelPtr base, FunctionPtr rho, Convention c) {
  const ModeBasis& b = base->basis();
  for (int j = 0; j < b.node_count(); ++j) {
    const double v = rho->value(b.node(j));
    if (!(v > 0.0)) throw LabError(ErrorCode::NonpositiveFactor, "conformal factor is not positive at a quadrature node");
  }
  const double k = 1.0 / exponent(base->n(), c);
  ConformalFactor f(std::move(base));
  f.declared_ = c;
  f.w_ = make_function([rho, k](const auto& at) {
    auto v = call(*rho, at);
    if (!(value_of(v) > 0.0)) throw LabError(ErrorCode::NonpositiveFactor, "conformal factor is not positive");
    using std::log;
    return log(v) * k;
  });
  return f;
}

ScalarField ConformalFactor::rho_field(Convention c) const {
  const ModeBasis& b = base_->basis();
  std::vector<double> g(b.node_count());
  for (int j = 0; j < b.node_count(); ++j) g[j] = rho(b.node(j), c);
  return ScalarField::from_grid(base_->basis_ptr(), std::move(g), Band::unknown());
}

bool ConformalFactor::consistent(double tol) const {
  const int n = base_->n();
  const ModeBasis& b = base_->basis();
  for (int j = 0; j < b.node_count(); ++j) {
    const double w0 = w(b.node(j));
    // Each convention's metric exponent reproduces e^{2w}.
    const double em = std::pow(rho(b.node(j), Convention::Metric), 4.0 / (n - 2));
    const double ee = std::pow(rho(b.node(j), Convention::Exponential), 2.0);
    if (std::abs(std::log(em) - 2 * w0) > tol * (1 + std::abs(w0))) return false;
    if (std::abs(std::log(ee) - 2 * w0) > tol * (1 + std::abs(w0))) return false;
    if (n != 4) {
      const double ep = std::pow(rho(b.node(j), Convention::Paneitz), 4.0 / (n - 4));
      if (std::abs(std::log(ep) - 2 * w0) > tol * (1 + std::abs(w0))) return false;
    }
  }
  return true;
}

ConformalFactor compose(const ConformalFactor& f, FunctionPtr extra_w) {
  if (f.is_identity()) return ConformalFactor::from_log(f.base_ptr(), std::move(extra_w));
  FunctionPtr w1 = f.log_factor();
  return ConformalFactor::from_log(f.base_ptr(), make_function([w1, extra_w](const auto& at) {
                                     return call(*w1, at) + call(*extra_w, at);
                                   }));
}

SymTensorField conformal_ricci(const ManifoldModel& m, const ConformalFactor& f) {
  const ModeBasis& b = m.basis();
  const int n = m.n();
  SymTensorField out(m.basis_ptr(), n);
  for (int j = 0; j < b.node_count(); ++j) {
    Chart<2> c = m.chart<2>(b.node(j));
    auto g = f.metric_at(c);
    auto rc = pointwise::ricci_frame(g, c.W.value());
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) out.set(j, i, k, rc[i * n + k]);
  }
  return out;
}

double q_at(const ConformalFactor& f, const Point& p) {
  Chart<4> c = f.base().chart<4>(p);
  return pointwise::q_curvature(f.metric_at(c)).value();
}

ScalarField conformal_q_direct(const ManifoldModel& m, const ConformalFactor& f) {
  const ModeBasis& b = m.basis();
  std::vector<double> g(b.node_count());
  for (int j = 0; j < b.node_count(); ++j) g[j] = q_at(f, b.node(j));
  return ScalarField::from_grid(m.basis_ptr(), std::move(g), Band::unknown());
}

ScalarField conformal_q(const ManifoldModel& m, const ConformalFactor& f) {
  if (f.is_identity()) return q_curvature(m);
  const ModeBasis& b = m.basis();
  const int n = m.n();
  std::vector<double> g(b.node_count());
  for (int j = 0; j < b.node_count(); ++j) {
    Chart<4> c = m.chart<4>(b.node(j));
    pointwise::Metric<4> base(c.W);
    Jet<4> w = f.w_jet(c);
    if (n == 4) {
      const double pw = pointwise::paneitz(base, w).value();
      g[j] = std::exp(-4.0 * w.value()) * (pw + m.q_value());
    } else {
      Jet<4> rho = exp(w * (0.5 * (n - 4)));
      const double prho = pointwise::paneitz(base, rho).value();
      g[j] = 2.0 / (n - 4) * std::pow(rho.value(), -(n + 4.0) / (n - 4.0)) * prho;
    }
  }
  return ScalarField::from_grid(m.basis_ptr(), std::move(g), Band::unknown());
}

MoebiusMap::MoebiusMap(int n, double lambda, std::vector<double> R1, std::vector<double> R2)
    : n_(n), lambda_(lambda), R1_(std::move(R1)), R2_(std::move(R2)) {
  const size_t N = n + 1;
  if (R1_.size() != N * N || R2_.size() != N * N || !(lambda > 0))
    throw LabError(ErrorCode::ConfigInvalid, "bad Moebius map parameters");
}

MoebiusMap MoebiusMap::random(int n, std::mt19937_64& rng, double max_log_lambda) {
  const int N = n + 1;
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(-max_log_lambda, max_log_lambda);
  auto rotation = [&] {
    Eigen::MatrixXd A(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) A(i, j) = nd(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    std::vector<double> out(N * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) out[i * N + j] = Q(i, j);
    return out;
  };
  auto R1 = rotation();
  auto R2 = rotation();
  return MoebiusMap(n, std::exp(ud(rng)), std::move(R1), std::move(R2));
}

Point MoebiusMap::apply(const Point& p) const {
  const int N = n_ + 1;
  std::vector<double> y(N, 0.0), z(N, 0.0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) y[a] += R1_[a * N + b] * p.x[b];
  if (y[N - 1] >= 1.0 - 1e-15) {
    z[N - 1] = 1.0;
  } else {
    // Stereographic projection from e_N, dilation, and back.
    const double s = lambda_ / (1.0 - y[N - 1]);
    double Y2 = 0.0;
    for (int a = 0; a < N - 1; ++a) {
      z[a] = s * y[a];
      Y2 += z[a] * z[a];
    }
    for (int a = 0; a < N - 1; ++a) z[a] = 2.0 * z[a] / (Y2 + 1.0);
    z[N - 1] = (Y2 - 1.0) / (Y2 + 1.0);
  }
  Point out;
  out.t = p.t;
  out.x.assign(N, 0.0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) out.x[a] += R2_[a * N + b] * z[b];
  return out;
}

FunctionPtr MoebiusMap::log_factor() const {
  MoebiusMap self = *this;
  return make_function([self](const auto& at) { return self.log_factor_eval(point_of(at)); });
}

}  // namespace conflab
