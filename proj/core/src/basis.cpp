#include "conflab/basis.hpp"

#include <sstream>

#include "conflab/error.hpp"

namespace conflab {

std::string to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Sphere: return "sphere";
    case BackendKind::ProductS1S2: return "product-S1xS2";
    case BackendKind::ProductS1S3: return "product-S1xS3";
  }
  return "unknown";
}

BackendKind parse_backend_kind(const std::string& s) {
  if (s == "sphere" || s == "sphere-analytic") return BackendKind::Sphere;
  if (s == "product-S1xS2") return BackendKind::ProductS1S2;
  if (s == "product-S1xS3") return BackendKind::ProductS1S3;
  throw LabError(ErrorCode::UnsupportedBackend, "unknown backend kind '" + s + "'");
}

ModeBasis::ModeBasis(BackendKind kind, int n, const BasisSpec& spec, double ell_internal, double scale)
    : kind_(kind),
      n_(n),
      spec_(spec),
      ell_(ell_internal),
      scale_(scale),
      harm_(kind == BackendKind::Sphere ? n : n - 1, spec.Lmax) {
  if (spec.K < 0 || spec.Lmax < 0 || spec.quad_extra < 0)
    throw LabError(ErrorCode::ConfigInvalid, "basis cutoffs must be nonnegative");
  if (!is_product() && spec.K != 0) spec_.K = 0;
  sphere_degree_ = 2 * spec_.Lmax + spec_.quad_extra;
  circle_nodes_ = is_product() ? 2 * spec_.K + 1 + spec_.quad_extra : 1;

  const int H = harm_.size();
  const int F = is_product() ? 2 * spec_.K + 1 : 1;
  for (int f = 0; f < F; ++f)
    for (int h = 0; h < H; ++h) {
      ModeInfo mi;
      mi.fourier = f;
      mi.harmonic = h;
      mi.k = (f + 1) / 2;
      mi.l = harm_.mode(h).degree();
      modes_.push_back(mi);
    }

  SphereRule sr = sphere_rule(m(), sphere_degree_);
  const double vol_scale = std::pow(scale_, n_);
  if (!is_product()) {
    for (int i = 0; i < sr.size(); ++i) {
      Point p;
      p.x.assign(sr.point(i), sr.point(i) + n_ + 1);
      nodes_.push_back(p);
      weights_.push_back(sr.weights[i] * vol_scale);
    }
  } else {
    Rule1D tr = trapezoid(circle_nodes_, ell_);
    for (size_t a = 0; a < tr.x.size(); ++a)
      for (int i = 0; i < sr.size(); ++i) {
        Point p;
        p.t = tr.x[a];
        p.x.assign(sr.point(i), sr.point(i) + n_);
        nodes_.push_back(p);
        weights_.push_back(tr.w[a] * sr.weights[i] * vol_scale);
      }
  }
}

int ModeBasis::index_of(int fourier, int harmonic) const {
  const int H = harm_.size();
  if (harmonic < 0 || harmonic >= H) return -1;
  const int F = is_product() ? 2 * spec_.K + 1 : 1;
  if (fourier < 0 || fourier >= F) return -1;
  return fourier * H + harmonic;
}

std::string ModeBasis::mode_label(int i) const {
  const ModeInfo& mi = modes_[i];
  const HarmonicMode& hm = harm_.mode(mi.harmonic);
  std::ostringstream os;
  if (is_product()) {
    os << "k=" << mi.k;
    if (mi.fourier > 0) os << (mi.fourier % 2 == 1 ? "c" : "s");
    os << ";";
  }
  os << "chain=";
  for (int j = static_cast<int>(hm.d.size()) - 1; j >= 1; --j) os << hm.d[j] << (j > 1 ? "," : "");
  if (hm.d[1] > 0) os << (hm.sign == 0 ? "c" : "s");
  return os.str();
}

double ModeBasis::grid_spacing() const {
  double h = kPi / (sphere_degree_ / 2 + 1);
  if (is_product()) h = std::max(h, ell_ / circle_nodes_);
  return h;
}

double ModeBasis::laplace_eigenvalue(int i) const {
  const ModeInfo& mi = modes_[i];
  const int mm = m();
  double v = static_cast<double>(mi.l) * (mi.l + mm - 1);
  if (is_product()) {
    const double w = 2.0 * kPi * mi.k / ell_;
    v += w * w;
  }
  return -v / (scale_ * scale_);
}

const std::vector<double>& ModeBasis::table() const {
  std::call_once(table_once_, [this] {
    const int S = size();
    table_.assign(static_cast<size_t>(S) * nodes_.size(), 0.0);
    std::vector<double> v;
    for (size_t j = 0; j < nodes_.size(); ++j) {
      eval(nodes_[j], v);
      std::copy(v.begin(), v.end(), table_.begin() + j * S);
    }
  });
  return table_;
}

double ModeBasis::volume() const {
  double v = unit_sphere_area(m());
  if (is_product()) v *= ell_;
  return v * std::pow(scale_, n_);
}

}  // namespace conflab
