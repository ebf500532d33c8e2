#include "conflab/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conflab/error.hpp"

namespace conflab {

ManifoldModel::ManifoldModel(BackendKind kind, int n, CatalogParams params, const BasisSpec& basis)
    : kind_(kind), n_(n), params_(params) {
  if (!(params.radius > 0.0)) throw LabError(ErrorCode::ConfigInvalid, "radius must be positive");
  if (kind != BackendKind::Sphere && !(params.ell > 0.0)) throw LabError(ErrorCode::ConfigInvalid, "ell must be positive");
  const double a = params.radius;
  basis_ = std::make_shared<ModeBasis>(kind, n, basis, kind == BackendKind::Sphere ? 0.0 : params.ell / a, a);
  const int mm = basis_->m();
  // Unit-scale curvature: round S^n has Rc = (n-1) g; S^1 x S^m has Rc = 0 + (m-1) g_{S^m}.
  const double ric = (mm - 1.0) / (a * a);
  const int ric_dims = mm;
  R_ = ric * ric_dims;
  rc2_ = ric * ric * ric_dims;
  Q_ = -q_ricci_coefficient(n) * rc2_ + q_scalar_coefficient(n) * R_ * R_;

  Rfield_ = ScalarField::constant(basis_, R_);
  Rc_ = SymTensorField(basis_, n);
  for (int j = 0; j < basis_->node_count(); ++j) {
    const Point& p = basis_->node(j);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) {
        double v = (i == k) ? ric : 0.0;
        // In the product chart the y-frame at omega0 contains the circle direction omega0.
        if (is_product()) v -= ric * p.x[i] * p.x[k];
        Rc_.set(j, i, k, v);
      }
  }
}

std::string ManifoldModel::id() const {
  std::ostringstream os;
  os << to_string(kind_) << "-n" << n_;
  if (params_.radius != 1.0) os << "-r" << params_.radius;
  if (is_product()) os << "-ell" << params_.ell;
  return os.str();
}

double ManifoldModel::distance(const Point& a, const Point& b) const {
  double dot = 0.0;
  for (size_t i = 0; i < a.x.size(); ++i) dot += a.x[i] * b.x[i];
  double ang = std::acos(std::clamp(dot, -1.0, 1.0));
  if (!is_product()) return scale() * ang;
  const double L = ell_internal();
  double dt = std::fmod(std::abs(a.t - b.t), L);
  dt = std::min(dt, L - dt);
  return scale() * std::sqrt(dt * dt + ang * ang);
}

ModelPtr catalog_build(BackendKind kind, int n, CatalogParams params, BasisSpec basis) {
  bool ok = false;
  switch (kind) {
    case BackendKind::Sphere: ok = n >= 3 && n <= 7; break;
    case BackendKind::ProductS1S2: ok = n == 3; break;
    case BackendKind::ProductS1S3: ok = n == 4; break;
  }
  if (!ok) {
    std::ostringstream os;
    os << "no catalog backend (" << to_string(kind) << ", n=" << n << ")";
    throw LabError(ErrorCode::UnsupportedBackend, os.str());
  }
  return std::make_shared<ManifoldModel>(kind, n, params, basis);
}

ScalarField q_curvature(const ManifoldModel& m) {
  const int n = m.n();
  ScalarField R = synthesize(m.R());
  ScalarField lapR = synthesize(laplacian(m.R()));
  ScalarField rc2 = m.Rc().norm_squared();
  std::vector<double> q(m.basis().node_count());
  for (size_t j = 0; j < q.size(); ++j) {
    const double r = R.grid()[j];
    q[j] = -lapR.grid()[j] / (2.0 * (n - 1)) - q_ricci_coefficient(n) * rc2.grid()[j] + q_scalar_coefficient(n) * r * r;
  }
  return ScalarField::from_grid(m.basis_ptr(), std::move(q), Band{0, 0});
}

}  // namespace conflab
