#pragma once

// Truncated multivariate Taylor polynomials ("jets") around a chart origin.
// A Jet<O> stores the Taylor coefficients of degree <= O in up to 7 variables.

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace conflab {

inline constexpr int kMaxJetVars = 7;

struct JetLayout {
  int nvars = 0;
  int order = 0;
  int size = 0;
  std::vector<std::array<std::int8_t, kMaxJetVars>> alpha;
  std::vector<int> degree;
  // up[v][i]: index of alpha_i + e_v, or -1 when that exceeds the order.
  std::vector<std::vector<int>> up;
  // Product table: c[k] += a[i] * b[j] for every (i, j, k).
  std::vector<std::array<int, 3>> triples;
  std::vector<int> unit;  // index of e_v
  int index_of(const std::array<std::int8_t, kMaxJetVars>& a) const;

  static const JetLayout& get(int nvars, int order);
};

constexpr int binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

template <int O>
class Jet {
 public:
  static constexpr int kOrder = O;
  static constexpr int kCapacity = binomial(kMaxJetVars + O, O);

  Jet() = default;
  Jet(int nvars, double value) : lay_(&JetLayout::get(nvars, O)) {
    c_.fill(0.0);
    c_[0] = value;
  }

  static Jet variable(int nvars, int v, double value) {
    Jet r(nvars, value);
    r.c_[r.lay_->unit[v]] = 1.0;
    return r;
  }

  int nvars() const { return lay_->nvars; }
  int size() const { return lay_->size; }
  const JetLayout& layout() const { return *lay_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  double value() const { return c_[0]; }
  double grad(int i) const { return c_[lay_->unit[i]]; }
  double hess(int i, int j) const {
    int k = lay_->up[j][lay_->unit[i]];
    return (i == j ? 2.0 : 1.0) * c_[k];
  }

  // Partial derivative in variable v; the result is exact to order O - 1.
  Jet d(int v) const {
    Jet r(lay_, 0.0);
    const auto& up = lay_->up[v];
    for (int i = 0; i < lay_->size; ++i) {
      int k = up[i];
      if (k >= 0) r.c_[i] = (lay_->alpha[i][v] + 1) * c_[k];
    }
    return r;
  }

  Jet& operator+=(const Jet& b) {
    for (int i = 0; i < lay_->size; ++i) c_[i] += b.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& b) {
    for (int i = 0; i < lay_->size; ++i) c_[i] -= b.c_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (int i = 0; i < lay_->size; ++i) c_[i] *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(const Jet& b) {
    *this = *this * b;
    return *this;
  }
  Jet& operator/=(const Jet& b) {
    *this = *this * inv(b);
    return *this;
  }
  // this += s * b
  void axpy(double s, const Jet& b) {
    for (int i = 0; i < lay_->size; ++i) c_[i] += s * b.c_[i];
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) {
    Jet r = -a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator-(const Jet& a) {
    Jet r(a.lay_, 0.0);
    for (int i = 0; i < a.lay_->size; ++i) r.c_[i] = -a.c_[i];
    return r;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator/(double s, const Jet& a) { return inv(a) * s; }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    assert(a.lay_ == b.lay_);
    Jet r(a.lay_, 0.0);
    for (const auto& t : a.lay_->triples) r.c_[t[2]] += a.c_[t[0]] * b.c_[t[1]];
    return r;
  }

  // f(a) where taylor[k] = f^{(k)}(a0) / k!
  Jet compose(const std::array<double, O + 1>& taylor) const {
    Jet g = *this;
    g.c_[0] = 0.0;
    Jet r(lay_, taylor[O]);
    for (int k = O - 1; k >= 0; --k) {
      r = r * g;
      r.c_[0] += taylor[k];
    }
    return r;
  }

  friend Jet inv(const Jet& a) {
    std::array<double, O + 1> t;
    double x = a.c_[0], p = 1.0 / x;
    for (int k = 0; k <= O; ++k) {
      t[k] = (k % 2 == 0 ? p : -p);
      p /= x;
    }
    return a.compose(t);
  }
  friend Jet exp(const Jet& a) {
    std::array<double, O + 1> t;
    double e = std::exp(a.c_[0]), f = 1.0;
    for (int k = 0; k <= O; ++k) {
      t[k] = e / f;
      f *= (k + 1);
    }
    return a.compose(t);
  }
  friend Jet log(const Jet& a) {
    std::array<double, O + 1> t;
    double x = a.c_[0];
    t[0] = std::log(x);
    double p = 1.0;
    for (int k = 1; k <= O; ++k) {
      p /= x;
      t[k] = (k % 2 == 1 ? p : -p) / k;
    }
    return a.compose(t);
  }
  friend Jet pow(const Jet& a, double e) {
    std::array<double, O + 1> t;
    double x = a.c_[0], b = 1.0;
    for (int k = 0; k <= O; ++k) {
      t[k] = b * std::pow(x, e - k);
      b *= (e - k) / (k + 1);
    }
    return a.compose(t);
  }
  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }
  friend Jet sin(const Jet& a) {
    std::array<double, O + 1> t;
    double s = std::sin(a.c_[0]), c = std::cos(a.c_[0]), f = 1.0;
    const double cyc[4] = {s, c, -s, -c};
    for (int k = 0; k <= O; ++k) {
      t[k] = cyc[k % 4] / f;
      f *= (k + 1);
    }
    return a.compose(t);
  }
  friend Jet cos(const Jet& a) {
    std::array<double, O + 1> t;
    double s = std::sin(a.c_[0]), c = std::cos(a.c_[0]), f = 1.0;
    const double cyc[4] = {c, -s, -c, s};
    for (int k = 0; k <= O; ++k) {
      t[k] = cyc[k % 4] / f;
      f *= (k + 1);
    }
    return a.compose(t);
  }
  friend Jet cosh(const Jet& a) {
    std::array<double, O + 1> t;
    double s = std::sinh(a.c_[0]), c = std::cosh(a.c_[0]), f = 1.0;
    for (int k = 0; k <= O; ++k) {
      t[k] = (k % 2 == 0 ? c : s) / f;
      f *= (k + 1);
    }
    return a.compose(t);
  }
  friend Jet sinh(const Jet& a) {
    std::array<double, O + 1> t;
    double s = std::sinh(a.c_[0]), c = std::cosh(a.c_[0]), f = 1.0;
    for (int k = 0; k <= O; ++k) {
      t[k] = (k % 2 == 0 ? s : c) / f;
      f *= (k + 1);
    }
    return a.compose(t);
  }

 private:
  Jet(const JetLayout* lay, double value) : lay_(lay) {
    c_.fill(0.0);
    c_[0] = value;
  }

  const JetLayout* lay_ = nullptr;
  std::array<double, kCapacity> c_{};
};

// Uniform helpers so generic code can run on double and Jet alike.
inline double value_of(double x) { return x; }
template <int O>
double value_of(const Jet<O>& x) {
  return x.value();
}

inline double constant_like(double, double v) { return v; }
template <int O>
Jet<O> constant_like(const Jet<O>& ref, double v) {
  return Jet<O>(ref.nvars(), v);
}

}  // namespace conflab
