#pragma once

#include <memory>

#include "conflab/chart.hpp"

namespace conflab {

// A smooth scalar function on a catalog manifold, evaluable at points and on chart jets.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;
  virtual double value(const Point& p) const = 0;
  virtual Jet<2> jet(const Chart<2>& c) const = 0;
  virtual Jet<4> jet(const Chart<4>& c) const = 0;
};

using FunctionPtr = std::shared_ptr<const SmoothFunction>;

// Evaluation sites: a plain point or a chart (whose point coordinates are jets).
inline const Point& point_of(const Point& p) { return p; }
template <int O>
const GenericPoint<Jet<O>>& point_of(const Chart<O>& c) {
  return c.p;
}
inline double call(const SmoothFunction& f, const Point& p) { return f.value(p); }
template <int O>
Jet<O> call(const SmoothFunction& f, const Chart<O>& c) {
  return f.jet(c);
}

// Implements the virtual interface from a templated `eval(site)`.
template <class Derived>
class SmoothFunctionT : public SmoothFunction {
 public:
  double value(const Point& p) const override { return self().eval(p); }
  Jet<2> jet(const Chart<2>& c) const override { return self().eval(c); }
  Jet<4> jet(const Chart<4>& c) const override { return self().eval(c); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

template <class F>
class LambdaFunction : public SmoothFunctionT<LambdaFunction<F>> {
 public:
  explicit LambdaFunction(F f) : f_(std::move(f)) {}
  template <class Site>
  auto eval(const Site& at) const {
    return f_(at);
  }

 private:
  F f_;
};

// Wraps a generic lambda `[](const auto& site) { ... }`; use point_of(site) for coordinates
// and call(fn, site) to evaluate other functions at the same site.
template <class F>
FunctionPtr make_function(F f) {
  return std::make_shared<LambdaFunction<F>>(std::move(f));
}

inline FunctionPtr constant_function(double c) {
  return make_function([c](const auto& at) { return constant_like(point_of(at).x[0], c); });
}

}  // namespace conflab
