#include "conflab/green.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <tuple>

#include "conflab/error.hpp"

namespace conflab {

namespace {

double kernel_coefficient(int n, OperatorTag tag) {
  return tag == OperatorTag::L ? green_l_coefficient(n) : green_p_coefficient(n);
}
double kernel_exponent(int n, OperatorTag tag) { return tag == OperatorTag::L ? 0.5 * (2 - n) : 0.5 * (4 - n); }

// G of a^2 g is a^{2-n} G (L) or a^{4-n} G (P).
double homothety_factor(const ManifoldModel& m, OperatorTag tag) {
  return std::pow(m.scale(), tag == OperatorTag::L ? 2 - m.n() : 4 - m.n());
}

void require_paneitz_dimension(int n, OperatorTag tag) {
  if (tag == OperatorTag::P && n == 4)
    throw LabError(ErrorCode::UnsupportedDimension, "no Paneitz Green's function here: P has constants in its kernel for n = 4");
}

// Power of a kernel coefficient * d^expo that stays finite at d = 0 when possible.
double kernel_power(double coef, double expo, double d2, double e) {
  if (d2 <= 0.0) {
    const double x = expo * e;
    if (x > 0) return 0.0;
    if (x == 0) return std::pow(coef, e);
    return std::numeric_limits<double>::infinity();
  }
  return std::pow(coef, e) * std::pow(d2, expo * e);
}

class SphereGreen final : public GreenField {
 public:
  SphereGreen(ModelPtr m, OperatorTag tag, Point pole) : GreenField(std::move(m), tag, std::move(pole)) {
    const int n = model().n();
    // (a^2 d)^expo already carries the homothety factor.
    coef_ = kernel_coefficient(n, tag);
    expo_ = kernel_exponent(n, tag);
    a2_ = model().scale() * model().scale();
  }
  std::string representation() const override { return "closed-form"; }
  double value(const Point& q) const override { return eval(q); }
  Jet<2> jet(const Chart<2>& c) const override { return eval(c.p); }
  Jet<4> jet(const Chart<4>& c) const override { return eval(c.p); }
  double power(const Point& q, double e) const override { return kernel_power(coef_, expo_, dist2(q), e); }

 private:
  // Squared chordal distance in the model metric.
  template <class T>
  T dist2(const GenericPoint<T>& q) const {
    const auto& p = pole().x;
    T s = (q.x[0] - p[0]) * (q.x[0] - p[0]);
    for (size_t a = 1; a < p.size(); ++a) s += (q.x[a] - p[a]) * (q.x[a] - p[a]);
    return s * a2_;
  }
  template <class T>
  T eval(const GenericPoint<T>& q) const {
    using std::pow;
    return pow(dist2(q), expo_) * coef_;
  }
  double coef_, expo_, a2_;
};

// Product Green's functions on the unit-scale model. For each sphere-factor degree l the
// circle direction is solved exactly: the periodic 1D Green's function is the line Green's
// function plus closed-form images. Summing the line parts over l gives the cylinder kernel S
// (up to the smooth shift H for the Paneitz kernel), so
//   G(tau, s) = S(tau, s) + H(tau) + sum_l dim_l / |S^m| P_l(s) I_l(tau).
struct ProductSeries {
  int L = 0, m = 0;
  OperatorTag tag = OperatorTag::L;
  double ell = 0.0;
  double coef_S = 0.0, expo_S = 0.0;
  double lead = 1.0;          // leading symbol coefficient in xi^2 (L) or xi^4 (P)
  bool paneitz_shift = false; // S^1 x S^2 Paneitz: decaying minus algebraic kernel = cosh(tau/2) / (4 pi)
  std::vector<double> alpha, beta, amp;
  double tail = 0.0;

  // cosh(a tau) / (a (e^{a ell} - 1)), written without overflow.
  template <class T>
  T image(double a, const T& tau) const {
    using std::exp;
    const double d = a * (1.0 - std::exp(-a * ell));
    return (exp((tau - ell) * a) + exp((tau + ell) * -a)) * (0.5 / d);
  }

  template <class T>
  T images(int l, const T& tau) const {
    if (tag == OperatorTag::L) return image(alpha[l], tau) * (1.0 / lead);
    const double a = alpha[l], b = beta[l];
    return (image(a, tau) - image(b, tau)) * (1.0 / (b * b - a * a));
  }

  template <class T>
  T smooth_part(const T& tau, const T& s) const {
    std::vector<T> P;
    zonal_all(m, L, s, P);
    T out = constant_like(tau, 0.0);
    for (int l = 0; l <= L; ++l) out += P[l] * images(l, tau) * amp[l];
    if (paneitz_shift) {
      using std::cosh;
      out += cosh(tau * 0.5) * (1.0 / (4.0 * kPi));
    }
    return out;
  }

  template <class T>
  T kernel(const T& d2) const {
    using std::pow;
    return pow(d2, expo_S) * coef_S;
  }
};

std::shared_ptr<const ProductSeries> build_series(const ManifoldModel& model, OperatorTag tag, int L) {
  const int n = model.n();
  const int m = n - 1;
  auto unit = catalog_build(model.kind(), n, CatalogParams{1.0, model.ell_internal()}, BasisSpec{0, 0, 0});
  auto S = std::make_shared<ProductSeries>();
  S->L = L;
  S->m = m;
  S->tag = tag;
  S->ell = model.ell_internal();
  S->coef_S = kernel_coefficient(n, tag);
  S->expo_S = kernel_exponent(n, tag);

  // Kernel gate: the symbol table of the model basis plus the k = 0 column up to degree L.
  double lmax = 0.0, lmin = std::numeric_limits<double>::infinity();
  auto sym = build_symbol(model, tag);
  for (double v : sym.eigenvalues) {
    lmax = std::max(lmax, std::abs(v));
    lmin = std::min(lmin, std::abs(v));
  }
  for (int l = 0; l <= L; ++l) {
    const double v = std::abs(symbol_value(model, tag, 0.0, l));
    lmax = std::max(lmax, v);
    lmin = std::min(lmin, v);
  }
  if (lmin < 1e-8 * lmax) throw LabError(ErrorCode::Kernel, to_string(tag) + " has a zero mode on " + model.id());
  if (tag == OperatorTag::P && n != 3)
    throw LabError(ErrorCode::UnsupportedDimension, "product Paneitz Green's functions are available for n = 3");
  S->paneitz_shift = tag == OperatorTag::P;

  double total = 0.0, last = 0.0;
  for (int l = 0; l <= L; ++l) {
    double a, b = 0.0;
    if (tag == OperatorTag::L) {
      S->lead = conformal_laplacian_coefficient(n);
      a = std::sqrt(symbol_value(*unit, tag, 0.0, l) / S->lead);
    } else {
      // Symbol x^2 + B x + C in x = xi^2 with roots -a^2, -b^2.
      const double C = symbol_value(*unit, tag, 0.0, l);
      const double B = symbol_value(*unit, tag, 1.0, l) - 1.0 - C;
      const double disc = B * B - 4.0 * C;
      if (disc <= 0.0 || C <= 0.0 || B <= 0.0)
        throw LabError(ErrorCode::UnsupportedBackend, "Paneitz symbol roots are not real and distinct");
      a = std::sqrt(0.5 * (B - std::sqrt(disc)));
      b = std::sqrt(0.5 * (B + std::sqrt(disc)));
    }
    S->alpha.push_back(a);
    S->beta.push_back(b);
    S->amp.push_back(Harmonics::dimension(m, l) / unit_sphere_area(m));
    const double size = std::abs(S->images(l, 0.5 * S->ell) * S->amp[l]);
    total += size;
    last = size;
  }
  S->tail = total > 0 ? last / total : 0.0;
  return S;
}

class ProductGreen final : public GreenField {
 public:
  ProductGreen(ModelPtr m, OperatorTag tag, Point pole, std::shared_ptr<const ProductSeries> series)
      : GreenField(std::move(m), tag, std::move(pole)), ser_(std::move(series)), factor_(homothety_factor(model(), tag)) {}
  std::string representation() const override { return "eigen-expansion"; }
  double value(const Point& q) const override { return eval(q); }
  Jet<2> jet(const Chart<2>& c) const override { return eval(c.p); }
  Jet<4> jet(const Chart<4>& c) const override { return eval(c.p); }
  double power(const Point& q, double e) const override {
    if (dist2(q) > 0.0) return std::pow(eval(q), e);
    if (ser_->expo_S < 0) return e < 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(ser_->smooth_part(0.0, 1.0) * factor_, e);
  }
  double tail() const { return ser_->tail; }

 private:
  template <class T>
  T reduced_tau(const T& t) const {
    const double tv = value_of(t) - pole().t;
    const double shift = ser_->ell * std::round(tv / ser_->ell);
    return t - (pole().t + shift);
  }
  // 2 (cosh tau - cos chi), evaluated without cancellation near the pole.
  template <class T>
  T dist2(const GenericPoint<T>& q) const {
    using std::sinh;
    T tau = reduced_tau(q.t);
    T sh = sinh(tau * 0.5);
    T d2 = sh * sh * 4.0;
    const auto& p = pole().x;
    for (size_t a = 0; a < p.size(); ++a) d2 += (q.x[a] - p[a]) * (q.x[a] - p[a]);
    return d2;
  }
  template <class T>
  T eval(const GenericPoint<T>& q) const {
    T tau = reduced_tau(q.t);
    const auto& p = pole().x;
    T s = q.x[0] * p[0];
    for (size_t a = 1; a < p.size(); ++a) s += q.x[a] * p[a];
    return (ser_->kernel(dist2(q)) + ser_->smooth_part(tau, s)) * factor_;
  }

  std::shared_ptr<const ProductSeries> ser_;
  double factor_;
};

class TransportedGreen final : public GreenField {
 public:
  TransportedGreen(GreenPtr base, ConformalFactor f)
      : GreenField(base->model_ptr(), base->op(), base->pole()), base_(std::move(base)), f_(std::move(f)) {
    const int n = model().n();
    k_ = ConformalFactor::exponent(n, op() == OperatorTag::L ? Convention::Metric : Convention::Paneitz);
    wp_ = f_.w(pole());
    if (!std::isfinite(wp_)) throw LabError(ErrorCode::NonpositiveFactor, "conformal factor is not positive at the pole");
  }
  std::string representation() const override { return "transported-" + base_->representation(); }
  double value(const Point& q) const override { return std::exp(-k_ * (wp_ + f_.w(q))) * base_->value(q); }
  Jet<2> jet(const Chart<2>& c) const override { return eval(c); }
  Jet<4> jet(const Chart<4>& c) const override { return eval(c); }
  double power(const Point& q, double e) const override {
    return std::exp(-k_ * e * (wp_ + f_.w(q))) * base_->power(q, e);
  }

 private:
  template <int O>
  Jet<O> eval(const Chart<O>& c) const {
    return exp(f_.w_jet(c) * -k_) * base_->jet(c) * std::exp(-k_ * wp_);
  }
  GreenPtr base_;
  ConformalFactor f_;
  double k_ = 0.0, wp_ = 0.0;
};

}  // namespace

SingularModel GreenField::singular() const {
  const int n = model_->n();
  if (tag_ == OperatorTag::P && n == 4) return {-1.0 / (8.0 * kPi * kPi), 0.0};
  return {kernel_coefficient(n, tag_), tag_ == OperatorTag::L ? 2.0 - n : 4.0 - n};
}

GreenPtr green_sphere_closed_form(ModelPtr m, OperatorTag tag, const Point& pole) {
  if (m->is_product()) throw LabError(ErrorCode::UnsupportedBackend, "closed-form Green's functions exist only on spheres");
  require_paneitz_dimension(m->n(), tag);
  return std::make_shared<SphereGreen>(std::move(m), tag, pole);
}

GreenPtr green_eigen_expansion(ModelPtr m, OperatorTag tag, const Point& pole, const GreenCutoff& cutoff) {
  if (!m->is_product()) throw LabError(ErrorCode::UnsupportedBackend, "eigen-expansion Green's functions are built on products");
  if (cutoff.L < 1) throw LabError(ErrorCode::ConfigInvalid, "Green cutoff must be positive");
  auto ser = build_series(*m, tag, cutoff.L);
  if (ser->tail > cutoff.tail_tol) {
    std::ostringstream os;
    os << "expansion tail " << ser->tail << " exceeds " << cutoff.tail_tol << " at L=" << cutoff.L;
    throw LabError(ErrorCode::CutoffTooLow, os.str());
  }
  return std::make_shared<ProductGreen>(std::move(m), tag, pole, std::move(ser));
}

double green_tail_estimate(const GreenField& g) {
  if (auto* p = dynamic_cast<const ProductGreen*>(&g)) return p->tail();
  return 0.0;
}

GreenPtr transport_green(GreenPtr g, const ConformalFactor& f) {
  require_paneitz_dimension(g->model().n(), g->op());
  if (f.is_identity()) return g;
  if (&f.base() != &g->model()) throw LabError(ErrorCode::ConfigInvalid, "conformal factor lives on a different model");
  return std::make_shared<TransportedGreen>(std::move(g), f);
}

GreenPtr make_green(const ConformalFactor& f, OperatorTag tag, const Point& pole, const GreenCutoff& cutoff) {
  GreenPtr g = f.base().is_product() ? green_eigen_expansion(f.base_ptr(), tag, pole, cutoff)
                                     : green_sphere_closed_form(f.base_ptr(), tag, pole);
  return transport_green(std::move(g), f);
}

double zonal_green_series(const ManifoldModel& m, OperatorTag tag, double cos_theta, int L, int kappa) {
  if (m.is_product()) throw LabError(ErrorCode::UnsupportedBackend, "zonal series needs a sphere");
  const int n = m.n();
  std::vector<double> P;
  zonal_all(n, L, cos_theta, P);
  const double top = (L + 1.0) * (L + n);
  double s = 0.0;
  for (int l = 0; l <= L; ++l) {
    const double mu = l * (l + n - 1.0);
    const double w = std::pow(1.0 - mu / top, kappa);
    s += w * Harmonics::dimension(n, l) * P[l] / symbol_value(m, tag, 0.0, l);
  }
  return s / m.volume();
}

std::string to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::Positive: return "POSITIVE";
    case SignVerdict::Negative: return "NEGATIVE";
    case SignVerdict::Mixed: return "MIXED";
  }
  return "MIXED";
}

double default_mask_radius(const ManifoldModel& m) {
  return std::min(3.0 * m.basis().grid_spacing(), 0.25 * kPi) * m.scale();
}

SignScan sign_scan(const GreenField& g, double mask_radius) {
  const ManifoldModel& m = g.model();
  if (mask_radius < 0) mask_radius = default_mask_radius(m);
  SignScan r;
  r.pole = g.pole();
  r.min = std::numeric_limits<double>::infinity();
  r.max = -r.min;
  const ModeBasis& b = m.basis();
  for (int j = 0; j < b.node_count(); ++j) {
    if (m.distance(b.node(j), g.pole()) <= mask_radius) {
      ++r.masked;
      continue;
    }
    const double v = g.value(b.node(j));
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
    ++r.scanned;
  }
  if (m.n() == 3 && g.op() == OperatorTag::P) r.diagonal = g.diagonal_value();
  r.theta = m.n() == 3 ? r.max : r.min;
  if (r.scanned > 0 && r.min > 0) r.verdict = SignVerdict::Positive;
  else if (r.scanned > 0 && r.max < 0) r.verdict = SignVerdict::Negative;
  else r.verdict = SignVerdict::Mixed;
  return r;
}

SignScanSummary sign_scan(const std::vector<GreenPtr>& fields, double mask_radius) {
  SignScanSummary s;
  for (const auto& g : fields) s.poles.push_back(sign_scan(*g, mask_radius));
  if (s.poles.empty()) return s;
  s.verdict = s.poles.front().verdict;
  for (const auto& p : s.poles)
    if (p.verdict != s.verdict) s.verdict = SignVerdict::Mixed;
  return s;
}

void write_green_csv(std::ostream& os, const std::vector<GreenPtr>& fields, double mask_radius) {
  os << "pole_id,node_index,value,masked_flag\n";
  os.precision(17);
  for (size_t i = 0; i < fields.size(); ++i) {
    const ManifoldModel& m = fields[i]->model();
    const double mr = mask_radius < 0 ? default_mask_radius(m) : mask_radius;
    for (int j = 0; j < m.basis().node_count(); ++j) {
      const Point& q = m.basis().node(j);
      const bool masked = m.distance(q, fields[i]->pole()) <= mr;
      os << i << "," << j << "," << fields[i]->value(q) << "," << (masked ? 1 : 0) << "\n";
    }
  }
}

ComparisonResult compare_green(const GreenField& gl, const GreenField& gp, double tol, double mask_radius) {
  const ManifoldModel& m = gl.model();
  const int n = m.n();
  if (n == 4) throw LabError(ErrorCode::UnsupportedDimension, "Green comparison is defined for n != 4");
  if (gl.op() != OperatorTag::L || gp.op() != OperatorTag::P) throw LabError(ErrorCode::ConfigInvalid, "compare_green expects (G_L, G_P)");
  if (mask_radius < 0) mask_radius = n == 3 ? 0.0 : default_mask_radius(m);
  ComparisonResult r;
  r.n = n;
  r.min_margin = std::numeric_limits<double>::infinity();
  r.max_margin = -r.min_margin;
  const double cn = paneitz_constant(n);
  const double e = (n - 4.0) / (n - 2.0);
  auto visit = [&](const Point& q) {
    double margin, scale;
    if (n == 3) {
      const double inv = gl.power(q, -1.0), p = gp.power(q, 1.0);
      margin = -(inv - cn * p);
      scale = std::max(std::abs(inv), std::abs(cn * p));
    } else {
      const double lp = gl.power(q, e);
      margin = cn * gp.value(q) - lp;
      scale = std::abs(lp);
    }
    r.scale = std::max(r.scale, scale);
    if (margin < r.min_margin) {
      r.min_margin = margin;
      r.argmin = q;
    }
    if (margin > r.max_margin) {
      r.max_margin = margin;
      r.argmax = q;
    }
  };
  const ModeBasis& b = m.basis();
  for (int j = 0; j < b.node_count(); ++j)
    if (mask_radius <= 0.0 || m.distance(b.node(j), gl.pole()) > mask_radius) visit(b.node(j));
  if (n == 3) {
    visit(gl.pole());
    r.includes_diagonal = true;
  }
  const double t = tol * r.scale;
  if (std::max(std::abs(r.min_margin), std::abs(r.max_margin)) <= t) r.verdict = "EQUALITY";
  else if (r.min_margin >= -t) r.verdict = "STRICT";
  else r.verdict = "VIOLATED";
  return r;
}

MassResult extract_mass(const ConformalFactor& f, const Point& pole, const PolarSpec& spec, double tol) {
  const ManifoldModel& m = f.base();
  const int n = m.n();
  if (m.is_product() || n < 5 || n > 7)
    throw LabError(ErrorCode::UnsupportedBackend, "mass extraction needs a conformal sphere with n in {5, 6, 7}");
  GreenPtr gl = make_green(f, OperatorTag::L, pole);
  GreenPtr gp = make_green(f, OperatorTag::P, pole);
  const double cn = paneitz_constant(n);
  const double e = (n - 4.0) / (n - 2.0);
  auto D = [&](const Point& q) { return cn * gp->value(q) - gl->power(q, e); };

  // Gauge: the stereographic chart at the pole, further rescaled by e^{-2w}, is Euclidean to first order.
  const double a = m.scale();
  const double gauge = std::exp((n - 4.0) * (std::log(2.0 * a) + f.w(pole)));
  const double norm = std::pow(4.0 * n * (n - 1.0) * unit_ball_volume(n), -e);

  MassResult res;
  res.pole = pole;
  res.tolerance = tol;

  // Constant term along rays y = r e_i of the chart, Richardson in r (const + c1 r + c2 r^2).
  auto E = tangent_basis(pole.x);
  auto chart_point = [&](int dir, double r) {
    Point q;
    q.x.resize(n + 1);
    const double sgn = dir % 2 == 0 ? 1.0 : -1.0;
    const auto& Ei = E[dir / 2];
    for (int c = 0; c <= n; ++c) q.x[c] = ((1.0 - r * r) * pole.x[c] + 2.0 * sgn * r * Ei[c]) / (1.0 + r * r);
    return q;
  };
  const double r0 = 0.02;
  double d0 = 0.0;
  for (int dir = 0; dir < 2 * n; ++dir) {
    const double d1 = D(chart_point(dir, r0)), d2 = D(chart_point(dir, 0.5 * r0)), d4 = D(chart_point(dir, 0.25 * r0));
    d0 += (8.0 * d4 - 6.0 * d2 + d1) / 3.0;
  }
  d0 /= 2 * n;
  res.A_expansion = gauge * d0 / norm;

  // Integral of G_P G_L^{(n-4)/(n-2)} |Rc|^2 for the blow-up metric G_L^{4/(n-2)} g~.
  PolarSpec ps = spec;
  if (ps.direction_degree < 0) ps.direction_degree = 6;
  PolarRule rule(m, pole, ps);
  // Inside this angle the ambient coordinates cannot resolve |x - p| well enough for curvature.
  const double inner_angle = 1e-3;
  double integral = 0.0;
  for (int r = 0; r < rule.ring_count(); ++r) {
    if (rule.ring_angle(r) < inner_angle) continue;
    for (int d = 0; d < rule.direction_count(); ++d) {
      const Point q = rule.point(r, d);
      Chart<2> c = m.chart<2>(q);
      const double wq = f.w(q);
      Jet<2> W = c.W + f.w_jet(c) + log(gl->jet(c)) * (2.0 / (n - 2.0));
      auto rc = pointwise::ricci_frame(pointwise::Metric<2>(W), c.W.value() + wq);
      double rc2 = 0.0;
      for (double v : rc) rc2 += v * v;
      const double wgt = rule.ring_weight(r) * rule.direction_weight(d) * std::exp(n * wq);
      integral += wgt * gp->value(q) * gl->power(q, e) * rc2;
    }
  }
  res.A_integral = gauge * (n - 4.0) / ((n - 2.0) * (n - 2.0)) * integral / norm;
  return res;
}

}  // namespace conflab
