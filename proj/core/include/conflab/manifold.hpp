#pragma once

#include <memory>
#include <string>

#include "conflab/field.hpp"

namespace conflab {

struct CatalogParams {
  double radius = 1.0;     // sphere radius, or radius of the sphere factor
  double ell = 2.0 * kPi;  // circle length (products)
};

// A catalog backend with closed-form curvature package.
class ManifoldModel {
 public:
  ManifoldModel(BackendKind kind, int n, CatalogParams params, const BasisSpec& basis);

  BackendKind kind() const { return kind_; }
  bool is_product() const { return kind_ != BackendKind::Sphere; }
  int n() const { return n_; }
  int m() const { return basis_->m(); }
  const CatalogParams& params() const { return params_; }
  double scale() const { return params_.radius; }
  double ell_internal() const { return basis_->ell_internal(); }
  const BasisPtr& basis_ptr() const { return basis_; }
  const ModeBasis& basis() const { return *basis_; }
  std::string id() const;

  // Constant curvature data.
  double scalar_curvature() const { return R_; }
  double ricci_norm2() const { return rc2_; }
  double q_value() const { return Q_; }
  double volume() const { return basis_->volume(); }

  // Curvature package on the quadrature grid.
  const ScalarField& R() const { return Rfield_; }
  const SymTensorField& Rc() const { return Rc_; }
  const std::vector<double>& volume_weights() const { return basis_->weights(); }

  template <int O>
  Chart<O> chart(const Point& p) const {
    return make_chart<O>(*basis_, p);
  }

  // Geodesic distance in the model metric.
  double distance(const Point& a, const Point& b) const;

 private:
  BackendKind kind_;
  int n_;
  CatalogParams params_;
  BasisPtr basis_;
  double R_ = 0, rc2_ = 0, Q_ = 0;
  ScalarField Rfield_;
  SymTensorField Rc_;
};

using ModelPtr = std::shared_ptr<const ManifoldModel>;

// Supported: sphere n in {3..7}; product-S1xS2 with n = 3; product-S1xS3 with n = 4.
ModelPtr catalog_build(BackendKind kind, int n, CatalogParams params = {}, BasisSpec basis = {});

// Q of the model metric as a field (pointwise algebra on the curvature package).
ScalarField q_curvature(const ManifoldModel& m);

}  // namespace conflab
