#include "conflab/harmonics.hpp"

#include <cmath>

#include "conflab/constants.hpp"
#include "conflab/error.hpp"

namespace conflab {

namespace {

// Squared L^2 norm of C_k^lam on [-1, 1] against (1 - t^2)^{lam - 1/2}.
double gegenbauer_norm2(int k, double lam) {
  return std::exp(std::log(kPi) + (1.0 - 2.0 * lam) * std::log(2.0) + std::lgamma(k + 2.0 * lam) -
                  std::lgamma(k + 1.0) - std::log(k + lam) - 2.0 * std::lgamma(lam));
}

}  // namespace

int Harmonics::dimension(int m, int l) {
  if (m == 1) return l == 0 ? 1 : 2;
  double v = std::exp(std::lgamma(l + m - 1.0) - std::lgamma(l + 1.0) - std::lgamma(m + 0.0));
  return static_cast<int>(std::lround((2.0 * l + m - 1.0) * v));
}

Harmonics::Harmonics(int m, int lmax) : m_(m), lmax_(lmax) {
  if (m < 1 || m > kMaxJetVars) throw LabError(ErrorCode::UnsupportedDimension, "harmonics need 1 <= m <= 7");
  if (lmax < 0) throw LabError(ErrorCode::ConfigInvalid, "Lmax must be >= 0");

  subtree_.assign(m + 1, std::vector<int>(lmax + 1, 0));
  for (int d = 0; d <= lmax; ++d) subtree_[1][d] = d > 0 ? 2 : 1;
  for (int j = 2; j <= m; ++j)
    for (int d = 0; d <= lmax; ++d)
      for (int dp = 0; dp <= d; ++dp) subtree_[j][d] += subtree_[j - 1][dp];

  std::vector<int> chain(m + 1, 0);
  auto rec = [&](auto&& self, int j, int dj) -> void {
    chain[j] = dj;
    if (j == 1) {
      double n2 = (dj == 0 ? 2.0 * kPi : kPi);
      for (int i = 2; i <= m; ++i) n2 *= gegenbauer_norm2(chain[i] - chain[i - 1], chain[i - 1] + 0.5 * (i - 1));
      HarmonicMode md;
      md.d = chain;
      md.norm = 1.0 / std::sqrt(n2);
      md.sign = 0;
      modes_.push_back(md);
      if (dj > 0) {
        md.sign = 1;
        modes_.push_back(md);
      }
      return;
    }
    for (int dp = 0; dp <= dj; ++dp) self(self, j - 1, dp);
  };
  first_of_degree_.push_back(0);
  for (int l = 0; l <= lmax; ++l) {
    rec(rec, m, l);
    first_of_degree_.push_back(static_cast<int>(modes_.size()));
  }
}

}  // namespace conflab
