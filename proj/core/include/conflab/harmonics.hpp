#pragma once

// Real orthonormal spherical harmonics on S^m built from Gegenbauer chains.
// A mode is a chain l = d_m >= d_{m-1} >= ... >= d_1 >= 0 plus a cos/sin flag
// for the innermost circle level.

#include <algorithm>
#include <cmath>
#include <vector>

#include "conflab/jet.hpp"

namespace conflab {

struct HarmonicMode {
  std::vector<int> d;  // d[1..m]; d[0] unused
  int sign = 0;        // 0: cos-type, 1: sin-type
  double norm = 1.0;   // reciprocal L^2(S^m) norm of the solid harmonic
  int degree() const { return d.back(); }
};

class Harmonics {
 public:
  Harmonics(int m, int lmax);

  int m() const { return m_; }
  int lmax() const { return lmax_; }
  int size() const { return static_cast<int>(modes_.size()); }
  const HarmonicMode& mode(int i) const { return modes_[i]; }
  // Number of modes with degree <= l.
  int count_up_to(int l) const { return first_of_degree_[l + 1]; }

  static int dimension(int m, int l);

  // Values of all modes (or of those flagged in `active`) at ambient point x in R^{m+1}.
  // Inactive entries are left untouched.
  template <class T>
  void eval(const T* x, std::vector<T>& out, const std::vector<char>* active = nullptr) const;

 private:
  template <class T>
  struct Work {
    std::vector<T> re, im;
    std::vector<T> g;  // g[(j * (L + 1) + dprev) * (L + 1) + k]
  };

  int m_, lmax_;
  std::vector<HarmonicMode> modes_;
  std::vector<int> first_of_degree_;
  std::vector<std::vector<int>> subtree_;  // subtree_[j][d]: chains below a level-j node of degree d
};

// Normalized zonal harmonics P_l(s) = C_l^{(m-1)/2}(s) / C_l^{(m-1)/2}(1), l = 0..L.
template <class T>
void zonal_all(int m, int L, const T& s, std::vector<T>& out) {
  out.clear();
  out.push_back(constant_like(s, 1.0));
  if (L >= 1) out.push_back(s);
  const double lam = 0.5 * (m - 1);
  for (int l = 1; l < L; ++l) {
    T next = s * out[l];
    next *= (2.0 * l + 2.0 * lam) / (l + 2.0 * lam);
    next.axpy(-l / (l + 2.0 * lam), out[l - 1]);
    out.push_back(next);
  }
}

template <>
inline void zonal_all<double>(int m, int L, const double& s, std::vector<double>& out) {
  out.clear();
  out.push_back(1.0);
  if (L >= 1) out.push_back(s);
  const double lam = 0.5 * (m - 1);
  for (int l = 1; l < L; ++l)
    out.push_back(((2.0 * l + 2.0 * lam) * s * out[l] - l * out[l - 1]) / (l + 2.0 * lam));
}

// ---------------------------------------------------------------------------

template <class T>
void Harmonics::eval(const T* x, std::vector<T>& out, const std::vector<char>* active) const {
  out.resize(modes_.size(), constant_like(x[0], 0.0));
  int top = -1;
  std::vector<int> prefix(modes_.size() + 1, 0);
  for (size_t i = 0; i < modes_.size(); ++i) {
    bool on = !active || (*active)[i];
    prefix[i + 1] = prefix[i] + (on ? 1 : 0);
    if (on) top = std::max(top, modes_[i].degree());
  }
  if (top < 0) return;
  const int L = top;
  const int W = L + 1;

  Work<T> w;
  w.re.assign(W, constant_like(x[0], 1.0));
  w.im.assign(W, constant_like(x[0], 0.0));
  for (int k = 1; k <= L; ++k) {
    w.re[k] = w.re[k - 1] * x[0] - w.im[k - 1] * x[1];
    w.im[k] = w.re[k - 1] * x[1] + w.im[k - 1] * x[0];
  }
  w.g.assign(static_cast<size_t>(m_ + 1) * W * W, constant_like(x[0], 0.0));
  T r2 = x[0] * x[0] + x[1] * x[1];
  for (int j = 2; j <= m_; ++j) {
    r2 += x[j] * x[j];
    const T& t = x[j];
    for (int dp = 0; dp <= L; ++dp) {
      const double lam = dp + 0.5 * (j - 1);
      T* g = &w.g[(static_cast<size_t>(j) * W + dp) * W];
      g[0] = constant_like(x[0], 1.0);
      if (dp + 1 <= L) g[1] = t * (2.0 * lam);
      for (int k = 2; dp + k <= L; ++k) {
        g[k] = t * g[k - 1] * (2.0 * (k + lam - 1.0) / k);
        T tmp = r2 * g[k - 2];
        g[k] -= tmp * ((k + 2.0 * lam - 2.0) / k);
      }
    }
  }

  // Depth-first walk over chains in mode order, sharing partial products.
  int idx = first_of_degree_[0];
  auto any_active = [&](int lo, int cnt) { return prefix[lo + cnt] - prefix[lo] > 0; };
  auto rec = [&](auto&& self, int j, int dj, const T& acc) -> void {
    if (j == 1) {
      const int k = dj;
      if (!active || (*active)[idx]) out[idx] = acc * w.re[k] * modes_[idx].norm;
      ++idx;
      if (k > 0) {
        if (!active || (*active)[idx]) out[idx] = acc * w.im[k] * modes_[idx].norm;
        ++idx;
      }
      return;
    }
    for (int dp = 0; dp <= dj; ++dp) {
      const int cnt = subtree_[j - 1][dp];
      if (!any_active(idx, cnt)) {
        idx += cnt;
        continue;
      }
      const T& g = w.g[(static_cast<size_t>(j) * W + dp) * W + (dj - dp)];
      self(self, j - 1, dp, acc * g);
    }
  };
  for (int l = 0; l <= L; ++l) {
    const int cnt = subtree_[m_][l];
    if (!any_active(idx, cnt)) {
      idx += cnt;
      continue;
    }
    rec(rec, m_, l, constant_like(x[0], 1.0));
  }
}

}  // namespace conflab
