#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "conflab/chart.hpp"
#include "conflab/constants.hpp"
#include "conflab/harmonics.hpp"
#include "conflab/quadrature.hpp"

namespace conflab {

enum class BackendKind { Sphere, ProductS1S2, ProductS1S3 };

std::string to_string(BackendKind kind);
BackendKind parse_backend_kind(const std::string& s);

struct BasisSpec {
  int K = 0;           // max Fourier index (products)
  int Lmax = 4;        // max harmonic degree on the sphere factor
  int quad_extra = 0;  // extra polynomial exactness beyond 2 * Lmax
};

struct ModeInfo {
  int fourier = 0;   // 0: constant, 2k - 1: cos k, 2k: sin k (products only)
  int harmonic = 0;  // index into the sphere-factor harmonics
  int k = 0;
  int l = 0;
};

// Orthonormal real basis and tensor quadrature for a catalog backend.
// Coordinates are internal (unit sphere factor, circle of length ell_internal);
// `scale` is the homothety applied to the whole metric.
class ModeBasis {
 public:
  ModeBasis(BackendKind kind, int n, const BasisSpec& spec, double ell_internal, double scale);

  BackendKind kind() const { return kind_; }
  bool is_product() const { return kind_ != BackendKind::Sphere; }
  int n() const { return n_; }
  int m() const { return is_product() ? n_ - 1 : n_; }
  int K() const { return spec_.K; }
  int Lmax() const { return spec_.Lmax; }
  int sphere_degree() const { return sphere_degree_; }
  int circle_nodes() const { return circle_nodes_; }
  double ell_internal() const { return ell_; }
  double scale() const { return scale_; }
  const BasisSpec& spec() const { return spec_; }

  int size() const { return static_cast<int>(modes_.size()); }
  const ModeInfo& mode(int i) const { return modes_[i]; }
  std::string mode_label(int i) const;
  // Index of the mode with the given Fourier slot and harmonic index, or -1.
  int index_of(int fourier, int harmonic) const;

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Point& node(int i) const { return nodes_[i]; }
  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  // Representative node spacing in internal units.
  double grid_spacing() const;

  const Harmonics& harmonics() const { return harm_; }
  double laplace_eigenvalue(int i) const;
  double volume() const;

  template <class T>
  void eval(const GenericPoint<T>& p, std::vector<T>& out, const std::vector<char>* active = nullptr) const;

  // Basis values at every node, node-major: table()[node * size() + mode]. Built on first use.
  const std::vector<double>& table() const;

 private:
  template <class T>
  void fourier(const T& t, int K, std::vector<T>& out) const;

  BackendKind kind_;
  int n_;
  BasisSpec spec_;
  double ell_, scale_;
  int sphere_degree_ = 0, circle_nodes_ = 1;
  Harmonics harm_;
  std::vector<ModeInfo> modes_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  mutable std::once_flag table_once_;
  mutable std::vector<double> table_;
};

// ---------------------------------------------------------------------------

template <class T>
void ModeBasis::fourier(const T& t, int K, std::vector<T>& out) const {
  out.assign(2 * K + 1, constant_like(t, 0.0));
  const double c0 = 1.0 / std::sqrt(ell_), ck = std::sqrt(2.0 / ell_);
  out[0] = constant_like(t, c0);
  if (K == 0) return;
  using std::cos;
  using std::sin;
  T th = t * (2.0 * kPi / ell_);
  T c1 = cos(th), s1 = sin(th);
  T c = c1, s = s1;
  for (int k = 1; k <= K; ++k) {
    out[2 * k - 1] = c * ck;
    out[2 * k] = s * ck;
    if (k < K) {
      T cn = c * c1 - s * s1;
      T sn = s * c1 + c * s1;
      c = cn;
      s = sn;
    }
  }
}

template <class T>
void ModeBasis::eval(const GenericPoint<T>& p, std::vector<T>& out, const std::vector<char>* active) const {
  const double norm = std::pow(scale_, -0.5 * n_);
  out.resize(modes_.size(), constant_like(p.x[0], 0.0));
  if (!is_product()) {
    harm_.eval(p.x.data(), out, active);
    for (int i = 0; i < size(); ++i)
      if (!active || (*active)[i]) out[i] *= norm;
    return;
  }
  const int H = harm_.size();
  std::vector<char> hact(H, active ? 0 : 1);
  int kmax = 0;
  if (active) {
    for (int i = 0; i < size(); ++i)
      if ((*active)[i]) {
        hact[modes_[i].harmonic] = 1;
        kmax = std::max(kmax, modes_[i].k);
      }
  } else {
    kmax = spec_.K;
  }
  std::vector<T> hv, fv;
  harm_.eval(p.x.data(), hv, &hact);
  fourier(p.t, kmax, fv);
  for (int i = 0; i < size(); ++i) {
    if (active && !(*active)[i]) continue;
    out[i] = fv[modes_[i].fourier] * hv[modes_[i].harmonic] * norm;
  }
}

}  // namespace conflab
