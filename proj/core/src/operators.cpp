#include "conflab/operators.hpp"

#include <cmath>
#include <ostream>

#include "conflab/error.hpp"

namespace conflab {

std::string to_string(OperatorTag t) { return t == OperatorTag::L ? "L" : "P"; }

double SpectralSymbol::max_abs() const {
  double s = 0.0;
  for (double v : eigenvalues) s = std::max(s, std::abs(v));
  return s;
}

ScalarField SpectralSymbol::apply(const ScalarField& f) const {
  const ScalarField a = analyze(f);
  std::vector<double> c = a.coefficients();
  for (size_t i = 0; i < c.size(); ++i) c[i] *= eigenvalues[i];
  return ScalarField::from_coefficients(a.basis_ptr(), std::move(c));
}

double symbol_value(const ManifoldModel& m, OperatorTag tag, double w, int l) {
  const int n = m.n();
  const int mm = m.m();
  const double a2 = m.scale() * m.scale();
  const double nu = l * (l + mm - 1.0) / a2;  // sphere-factor part of -Laplacian
  const double mu = nu + w * w / a2;
  const double R = m.scalar_curvature();
  if (tag == OperatorTag::L) return conformal_laplacian_coefficient(n) * mu + R;
  // Ricci is (m - 1)/a^2 on the sphere factor and 0 along the circle, so div(Rc grad) = -ric nu.
  const double ric = (mm - 1.0) / a2;
  double v = mu * mu - 4.0 / (n - 2.0) * ric * nu + paneitz_scalar_coefficient(n) * R * mu;
  if (n != 4) v += 0.5 * (n - 4.0) * m.q_value();
  return v;
}

SpectralSymbol build_symbol(const ManifoldModel& m, OperatorTag tag) {
  SpectralSymbol s;
  s.basis = m.basis_ptr();
  s.op = tag;
  const ModeBasis& b = m.basis();
  s.eigenvalues.resize(b.size());
  for (int i = 0; i < b.size(); ++i) {
    const double w = b.is_product() ? 2.0 * kPi * b.mode(i).k / b.ell_internal() : 0.0;
    s.eigenvalues[i] = symbol_value(m, tag, w, b.mode(i).l);
  }
  return s;
}

ScalarField apply_L(const ManifoldModel& m, const ScalarField& phi) { return build_symbol(m, OperatorTag::L).apply(phi); }
ScalarField apply_P(const ManifoldModel& m, const ScalarField& phi) { return build_symbol(m, OperatorTag::P).apply(phi); }

double apply_at(const ConformalFactor& f, OperatorTag tag, const SmoothFunction& phi, const Point& p) {
  Chart<4> c = f.base().chart<4>(p);
  auto g = f.metric_at(c);
  Jet<4> u = phi.jet(c);
  if (tag == OperatorTag::L) return pointwise::conformal_laplacian(g, u).value();
  return pointwise::paneitz(g, u).value();
}

double apply_at(const ManifoldModel& m, OperatorTag tag, const SmoothFunction& phi, const Point& p) {
  Chart<4> c = m.chart<4>(p);
  pointwise::Metric<4> g(c.W);
  Jet<4> u = phi.jet(c);
  if (tag == OperatorTag::L) return pointwise::conformal_laplacian(g, u).value();
  return pointwise::paneitz(g, u).value();
}

double quadratic_form_E(const ManifoldModel& m, const ScalarField& u, const ScalarField& v) {
  const ScalarField ua = analyze(u), va = analyze(v);
  const ModeBasis& b = m.basis();
  const int n = m.n();
  const double R = m.scalar_curvature();
  const double cR = paneitz_scalar_coefficient(n) * R;
  const double cQ = n == 4 ? 0.0 : 0.5 * (n - 4.0) * m.q_value();
  const auto& wts = b.weights();
  double total = 0.0;
  std::vector<double> gu(n), gv(n);
  for (int j = 0; j < b.node_count(); ++j) {
    Chart<2> c = m.chart<2>(b.node(j));
    pointwise::Metric<2> g(c.W);
    Jet<2> U = ua.eval(c.p), V = va.eval(c.p);
    const double e = std::exp(-c.W.value());
    double dot = 0.0, rc = 0.0;
    for (int i = 0; i < n; ++i) {
      gu[i] = e * U.grad(i);
      gv[i] = e * V.grad(i);
      dot += gu[i] * gv[i];
    }
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) rc += m.Rc()(j, i, k) * gu[i] * gv[k];
    const double integrand = pointwise::laplacian(g, U).value() * pointwise::laplacian(g, V).value() -
                             4.0 / (n - 2.0) * rc + cR * dot + cQ * U.value() * V.value();
    total += wts[j] * integrand;
  }
  return total;
}

void write_symbol_csv(std::ostream& os, const SpectralSymbol& L, const SpectralSymbol& P) {
  os << "mode_id,factor_indices,eigenvalue_L,eigenvalue_P\n";
  os.precision(17);
  for (size_t i = 0; i < L.eigenvalues.size(); ++i)
    os << i << ",\"" << L.basis->mode_label(static_cast<int>(i)) << "\"," << L.eigenvalues[i] << "," << P.eigenvalues[i]
       << "\n";
}

}  // namespace conflab
