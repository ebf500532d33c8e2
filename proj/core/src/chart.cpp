#include "conflab/chart.hpp"

namespace conflab {

std::vector<std::vector<double>> tangent_basis(const std::vector<double>& x0) {
  // Householder reflection H with H e_last = +-x0; its other columns span x0^perp.
  const int N = static_cast<int>(x0.size());
  std::vector<double> v(x0);
  const double sgn = x0[N - 1] > 0 ? 1.0 : -1.0;
  for (auto& a : v) a *= sgn;
  v[N - 1] += 1.0;
  double vv = 0.0;
  for (double a : v) vv += a * a;
  std::vector<std::vector<double>> E(N - 1, std::vector<double>(N, 0.0));
  for (int i = 0; i < N - 1; ++i) {
    for (int a = 0; a < N; ++a) E[i][a] = (a == i ? 1.0 : 0.0) - 2.0 * v[a] * v[i] / vv;
  }
  return E;
}

}  // namespace conflab
