#pragma once

#include <cmath>
#include <numbers>

namespace conflab {

inline constexpr double kPi = std::numbers::pi;

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Area of the unit sphere S^m embedded in R^{m+1}.
inline double unit_sphere_area(int m) {
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

/// Coefficient of G_L ~ coeff * r^{2-n} at the pole.
inline double green_l_coefficient(int n) {
  return 1.0 / (4.0 * n * (n - 1) * unit_ball_volume(n));
}

/// Coefficient of G_P ~ coeff * r^{4-n} at the pole, from the Euclidean
/// fundamental solution of the bi-Laplacian (negative for n = 3).
inline double green_p_coefficient(int n) {
  return 1.0 / (2.0 * n * (n - 2) * (n - 4) * unit_ball_volume(n));
}

/// Dimensional constant linking G_L^{(n-4)/(n-2)} and G_P; n != 2, 4.
inline double paneitz_constant(int n) {
  const double nd = n;
  const double e = (nd - 4.0) / (nd - 2.0);
  return std::pow(2.0, -(nd - 6.0) / (nd - 2.0)) * std::pow(nd, 2.0 / (nd - 2.0)) *
         std::pow(nd - 1.0, -e) * (nd - 2.0) * (nd - 4.0) *
         std::pow(unit_ball_volume(n), 2.0 / (nd - 2.0));
}

/// Coefficient of the second-order term of the conformal Laplacian.
inline double conformal_laplacian_coefficient(int n) { return 4.0 * (n - 1) / (n - 2.0); }

/// Coefficient of div(R grad) in the Paneitz operator.
inline double paneitz_scalar_coefficient(int n) {
  return (n * n - 4.0 * n + 8.0) / (2.0 * (n - 1) * (n - 2.0));
}

/// Q = -dR/(2(n-1)) - ricci_coeff |Rc|^2 + scalar_coeff R^2.
inline double q_ricci_coefficient(int n) { return 2.0 / ((n - 2.0) * (n - 2.0)); }

inline double q_scalar_coefficient(int n) {
  const double nd = n;
  return (nd * nd * nd - 4.0 * nd * nd + 16.0 * nd - 16.0) /
         (8.0 * (nd - 1.0) * (nd - 1.0) * (nd - 2.0) * (nd - 2.0));
}

}  // namespace conflab
