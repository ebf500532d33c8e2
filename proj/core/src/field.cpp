#include "conflab/field.hpp"

#include <algorithm>

#include "conflab/error.hpp"

namespace conflab {

Band operator+(Band a, Band b) {
  if (!a.limited() || !b.limited()) return Band::unknown();
  return {a.sphere + b.sphere, a.circle + b.circle};
}

namespace {

Band band_of(const ModeBasis& b, const std::vector<double>& c) {
  Band band{0, 0};
  for (int i = 0; i < b.size(); ++i)
    if (c[i] != 0.0) {
      band.sphere = std::max(band.sphere, b.mode(i).l);
      band.circle = std::max(band.circle, b.mode(i).k);
    }
  return band;
}

void check_same(const ScalarField& a, const ScalarField& b) {
  if (&a.basis() != &b.basis()) throw LabError(ErrorCode::ConfigInvalid, "fields live on different bases");
}

ScalarField grid_view(const ScalarField& f) { return f.has_grid() ? f : synthesize(f); }

}  // namespace

ScalarField ScalarField::from_coefficients(BasisPtr basis, std::vector<double> coef) {
  if (static_cast<int>(coef.size()) != basis->size())
    throw LabError(ErrorCode::ConfigInvalid, "coefficient vector does not match basis size");
  ScalarField f;
  f.band_ = band_of(*basis, coef);
  f.basis_ = std::move(basis);
  f.coef_ = std::move(coef);
  f.sync_ = Sync::Coefficients;
  return f;
}

ScalarField ScalarField::from_grid(BasisPtr basis, std::vector<double> values, Band band) {
  if (static_cast<int>(values.size()) != basis->node_count())
    throw LabError(ErrorCode::ConfigInvalid, "grid vector does not match node count");
  ScalarField f;
  f.basis_ = std::move(basis);
  f.grid_ = std::move(values);
  f.sync_ = Sync::Grid;
  f.band_ = band;
  return f;
}

ScalarField ScalarField::constant(BasisPtr basis, double c) {
  std::vector<double> coef(basis->size(), 0.0);
  coef[0] = c * std::sqrt(basis->volume());
  return from_coefficients(std::move(basis), std::move(coef));
}

ScalarField ScalarField::sample(BasisPtr basis, const SmoothFunction& fn) {
  std::vector<double> g(basis->node_count());
  for (int j = 0; j < basis->node_count(); ++j) g[j] = fn.value(basis->node(j));
  return from_grid(std::move(basis), std::move(g), Band::unknown());
}

const std::vector<double>& ScalarField::coefficients() const {
  if (!has_coefficients()) throw LabError(ErrorCode::ConfigInvalid, "coefficients not synchronized; call analyze");
  return coef_;
}

const std::vector<double>& ScalarField::grid() const {
  if (!has_grid()) throw LabError(ErrorCode::ConfigInvalid, "grid values not synchronized; call synthesize");
  return grid_;
}

namespace {

class FieldFunction : public SmoothFunctionT<FieldFunction> {
 public:
  explicit FieldFunction(ScalarField f) : f_(std::move(f)) {}
  template <class Site>
  auto eval(const Site& at) const {
    return f_.eval(point_of(at));
  }

 private:
  ScalarField f_;
};

}  // namespace

FunctionPtr ScalarField::as_function() const {
  if (!has_coefficients()) throw LabError(ErrorCode::ConfigInvalid, "field function needs coefficients");
  return std::make_shared<FieldFunction>(*this);
}

ScalarField synthesize(const ScalarField& f) {
  if (f.has_grid()) return f;
  const ModeBasis& b = f.basis();
  const auto& tab = b.table();
  const int S = b.size();
  ScalarField r = f;
  r.grid_.assign(b.node_count(), 0.0);
  for (int j = 0; j < b.node_count(); ++j) {
    const double* row = tab.data() + static_cast<size_t>(j) * S;
    double s = 0.0;
    for (int i = 0; i < S; ++i) s += f.coef_[i] * row[i];
    r.grid_[j] = s;
  }
  r.sync_ = ScalarField::Sync::Both;
  return r;
}

ScalarField project(const ScalarField& f) {
  if (f.has_coefficients()) return f;
  const ModeBasis& b = f.basis();
  const auto& tab = b.table();
  const auto& w = b.weights();
  const int S = b.size();
  ScalarField r = f;
  r.coef_.assign(S, 0.0);
  for (int j = 0; j < b.node_count(); ++j) {
    const double* row = tab.data() + static_cast<size_t>(j) * S;
    const double gw = f.grid_[j] * w[j];
    for (int i = 0; i < S; ++i) r.coef_[i] += gw * row[i];
  }
  r.sync_ = ScalarField::Sync::Both;
  if (!f.band().limited()) r.band_ = band_of(b, r.coef_);
  return r;
}

ScalarField analyze(const ScalarField& f) {
  if (f.has_coefficients()) return f;
  const ModeBasis& b = f.basis();
  const Band band = f.band();
  if (!band.limited())
    throw LabError(ErrorCode::Aliasing, "field is not band-limited; use project() for approximate projection");
  if (band.sphere + b.Lmax() > b.sphere_degree() ||
      (b.is_product() && band.circle + b.K() > b.circle_nodes() - 1))
    throw LabError(ErrorCode::Aliasing, "projection degree exceeds quadrature exactness");
  return project(f);
}

double integrate(const ScalarField& f) {
  const ScalarField g = grid_view(f);
  const auto& w = g.basis().weights();
  double s = 0.0;
  for (size_t j = 0; j < w.size(); ++j) s += w[j] * g.grid()[j];
  return s;
}

ScalarField laplacian(const ScalarField& f) {
  const ScalarField a = analyze(f);
  std::vector<double> c = a.coefficients();
  for (size_t i = 0; i < c.size(); ++i) c[i] *= a.basis().laplace_eigenvalue(static_cast<int>(i));
  return ScalarField::from_coefficients(a.basis_ptr(), std::move(c));
}

ScalarField gradient_norm_squared(const ScalarField& f) {
  const ScalarField a = analyze(f);
  const ModeBasis& b = a.basis();
  const int n = b.n();
  std::vector<double> g(b.node_count());
  for (int j = 0; j < b.node_count(); ++j) {
    Chart<2> c = make_chart<2>(b, b.node(j));
    Jet<2> v = a.eval(c.p);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += v.grad(i) * v.grad(i);
    g[j] = std::exp(-2.0 * c.W.value()) * s;
  }
  Band band = a.band() + a.band();
  return ScalarField::from_grid(a.basis_ptr(), std::move(g), band);
}

SymTensorField hessian(const ScalarField& f) {
  const ScalarField a = analyze(f);
  const ModeBasis& b = a.basis();
  const int n = b.n();
  SymTensorField h(a.basis_ptr(), n);
  for (int j = 0; j < b.node_count(); ++j) {
    Chart<2> c = make_chart<2>(b, b.node(j));
    Jet<2> v = a.eval(c.p);
    const double e = std::exp(-2.0 * c.W.value());
    double wf = 0.0;
    for (int k = 0; k < n; ++k) wf += c.W.grad(k) * v.grad(k);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) {
        double hij = v.hess(i, k) - (c.W.grad(k) * v.grad(i) + c.W.grad(i) * v.grad(k));
        if (i == k) hij += wf;
        h.set(j, i, k, e * hij);
      }
  }
  return h;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  check_same(a, b);
  const ScalarField ga = grid_view(a), gb = grid_view(b);
  std::vector<double> g(ga.grid().size());
  for (size_t j = 0; j < g.size(); ++j) g[j] = ga.grid()[j] * gb.grid()[j];
  return ScalarField::from_grid(a.basis_ptr(), std::move(g), a.band() + b.band());
}

namespace {

Band band_max(Band a, Band b) {
  if (!a.limited() || !b.limited()) return Band::unknown();
  return {std::max(a.sphere, b.sphere), std::max(a.circle, b.circle)};
}

ScalarField combine(const ScalarField& a, const ScalarField& b, double sb) {
  check_same(a, b);
  if (a.has_coefficients() && b.has_coefficients()) {
    std::vector<double> c = a.coefficients();
    for (size_t i = 0; i < c.size(); ++i) c[i] += sb * b.coefficients()[i];
    return ScalarField::from_coefficients(a.basis_ptr(), std::move(c));
  }
  const ScalarField ga = grid_view(a), gb = grid_view(b);
  std::vector<double> g(ga.grid().size());
  for (size_t j = 0; j < g.size(); ++j) g[j] = ga.grid()[j] + sb * gb.grid()[j];
  return ScalarField::from_grid(a.basis_ptr(), std::move(g), band_max(a.band(), b.band()));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return combine(a, b, 1.0); }
ScalarField operator-(const ScalarField& a, const ScalarField& b) { return combine(a, b, -1.0); }

ScalarField operator*(double s, const ScalarField& a) {
  if (a.has_coefficients()) {
    std::vector<double> c = a.coefficients();
    for (auto& v : c) v *= s;
    return ScalarField::from_coefficients(a.basis_ptr(), std::move(c));
  }
  std::vector<double> g = a.grid();
  for (auto& v : g) v *= s;
  return ScalarField::from_grid(a.basis_ptr(), std::move(g), a.band());
}

SymTensorField::SymTensorField(BasisPtr basis, int dim) : basis_(std::move(basis)), dim_(dim) {
  data_.assign(static_cast<size_t>(basis_->node_count()) * components(), 0.0);
}

int SymTensorField::component_index(int i, int j, int dim) {
  if (i > j) std::swap(i, j);
  return i * dim - i * (i - 1) / 2 + (j - i);
}

double SymTensorField::operator()(int node, int i, int j) const {
  return data_[static_cast<size_t>(node) * components() + component_index(i, j, dim_)];
}

void SymTensorField::set(int node, int i, int j, double v) {
  data_[static_cast<size_t>(node) * components() + component_index(i, j, dim_)] = v;
}

ScalarField SymTensorField::trace() const {
  std::vector<double> g(basis_->node_count());
  for (int j = 0; j < basis_->node_count(); ++j) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += (*this)(j, i, i);
    g[j] = s;
  }
  return ScalarField::from_grid(basis_, std::move(g), Band::unknown());
}

ScalarField SymTensorField::norm_squared() const {
  std::vector<double> g(basis_->node_count());
  for (int j = 0; j < basis_->node_count(); ++j) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k) s += (*this)(j, i, k) * (*this)(j, i, k);
    g[j] = s;
  }
  return ScalarField::from_grid(basis_, std::move(g), Band::unknown());
}

}  // namespace conflab
