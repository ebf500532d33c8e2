#pragma once

#include <memory>
#include <vector>

#include "conflab/basis.hpp"
#include "conflab/function.hpp"

namespace conflab {

using BasisPtr = std::shared_ptr<const ModeBasis>;

// Chart at a point, using the backend's canonical conformally flat chart.
template <int O>
Chart<O> make_chart(const ModeBasis& b, const Point& p) {
  if (b.is_product()) return product_chart<O>(p.t, p.x, b.scale());
  return sphere_chart<O>(p.x, b.scale());
}

// Polynomial band of a field: highest sphere-factor degree and circle frequency.
// A negative entry means "not band-limited".
struct Band {
  int sphere = 0;
  int circle = 0;
  bool limited() const { return sphere >= 0 && circle >= 0; }
  static Band unknown() { return {-1, -1}; }
};

Band operator+(Band a, Band b);

class ScalarField {
 public:
  enum class Sync { Coefficients, Grid, Both };

  ScalarField() = default;
  static ScalarField from_coefficients(BasisPtr basis, std::vector<double> coef);
  static ScalarField from_grid(BasisPtr basis, std::vector<double> values, Band band);
  static ScalarField constant(BasisPtr basis, double c);
  // Grid samples of an arbitrary smooth function (not band-limited).
  static ScalarField sample(BasisPtr basis, const SmoothFunction& f);

  const ModeBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  Sync sync() const { return sync_; }
  bool has_coefficients() const { return sync_ != Sync::Grid; }
  bool has_grid() const { return sync_ != Sync::Coefficients; }
  const std::vector<double>& coefficients() const;
  const std::vector<double>& grid() const;
  Band band() const { return band_; }

  // Evaluate the mode expansion (requires coefficients).
  template <class T>
  T eval(const GenericPoint<T>& p) const;

  FunctionPtr as_function() const;

 private:
  BasisPtr basis_;
  std::vector<double> coef_, grid_;
  Sync sync_ = Sync::Coefficients;
  Band band_{};

  friend ScalarField synthesize(const ScalarField&);
  friend ScalarField analyze(const ScalarField&);
  friend ScalarField project(const ScalarField&);
};

// Symmetric 2-tensor stored as grid values in the chart orthonormal frame at each node
// (frame e^{-W} d/dy_i of the canonical chart centered at that node).
class SymTensorField {
 public:
  SymTensorField() = default;
  SymTensorField(BasisPtr basis, int dim);

  const ModeBasis& basis() const { return *basis_; }
  int dim() const { return dim_; }
  int components() const { return dim_ * (dim_ + 1) / 2; }
  static int component_index(int i, int j, int dim);

  double operator()(int node, int i, int j) const;
  void set(int node, int i, int j, double v);

  ScalarField trace() const;
  ScalarField norm_squared() const;

 private:
  BasisPtr basis_;
  int dim_ = 0;
  std::vector<double> data_;
};

ScalarField synthesize(const ScalarField& f);
// Throws ALIASING when the field's band plus the basis cutoff exceeds quadrature exactness.
ScalarField analyze(const ScalarField& f);
// Quadrature projection without the aliasing guard.
ScalarField project(const ScalarField& f);
double integrate(const ScalarField& f);

ScalarField laplacian(const ScalarField& f);
ScalarField gradient_norm_squared(const ScalarField& f);
SymTensorField hessian(const ScalarField& f);

ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

// ---------------------------------------------------------------------------

template <class T>
T ScalarField::eval(const GenericPoint<T>& p) const {
  const auto& c = coefficients();
  std::vector<char> active(c.size(), 0);
  for (size_t i = 0; i < c.size(); ++i) active[i] = c[i] != 0.0;
  std::vector<T> vals;
  basis_->eval(p, vals, &active);
  T r = constant_like(p.x[0], 0.0);
  for (size_t i = 0; i < c.size(); ++i)
    if (active[i]) r += vals[i] * c[i];
  return r;
}

}  // namespace conflab
