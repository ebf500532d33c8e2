#include "conflab/polar.hpp"

#include <algorithm>
#include <cmath>

namespace conflab {

PolarRule::PolarRule(const ManifoldModel& m, const Point& pole, const PolarSpec& spec)
    : product_(m.is_product()), N_(static_cast<int>(pole.x.size())), scale_n_(std::pow(m.scale(), m.n())), pole_(pole) {
  E_ = tangent_basis(pole.x);
  const int deg = spec.direction_degree >= 0 ? spec.direction_degree : m.basis().Lmax() + 4;
  dirs_ = sphere_rule(N_ - 2, std::max(deg, 1));
  const int sm = N_ - 1;  // dimension of the sphere (factor)

  if (!product_) {
    Rule1D th = graded_gauss(spec.panels, spec.per_panel, kPi);
    for (size_t i = 0; i < th.x.size(); ++i) add_ring(0.0, th.x[i], th.w[i] * std::pow(std::sin(th.x[i]), sm - 1));
    return;
  }

  const double ell = m.ell_internal();
  const double T = 0.5 * ell;
  const double h = std::min({0.15 * ell, kPi / 3.0, T});
  std::vector<double> bt = {0.0, h, 0.15 * ell, 0.45 * ell, T};
  std::sort(bt.begin(), bt.end());
  bt.erase(std::unique(bt.begin(), bt.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), bt.end());
  const std::vector<double> bc = {0.0, h, 0.5 * kPi, kPi};
  auto measure = [&](double chi) { return std::pow(std::sin(chi), sm - 1); };

  for (int side : {1, -1}) {
    for (size_t i = 0; i + 1 < bt.size(); ++i)
      for (size_t j = 0; j + 1 < bc.size(); ++j) {
        if (bc[j + 1] <= bc[j]) continue;
        if (i == 0 && j == 0) {
          // Duffy corner: two triangles sharing the singular vertex, graded radially.
          Rule1D u = graded_gauss(spec.panels, spec.per_panel, 1.0);
          Rule1D v = gauss_legendre(spec.duffy_nodes, 0.0, 1.0);
          const double a = bt[1], b = bc[1];
          for (size_t iu = 0; iu < u.x.size(); ++iu)
            for (size_t iv = 0; iv < v.x.size(); ++iv) {
              const double jac = a * b * u.x[iu] * u.w[iu] * v.w[iv];
              double tau = u.x[iu] * a, chi = u.x[iu] * v.x[iv] * b;
              add_ring(side * tau, chi, jac * measure(chi));
              tau = u.x[iu] * v.x[iv] * a;
              chi = u.x[iu] * b;
              add_ring(side * tau, chi, jac * measure(chi));
            }
          continue;
        }
        Rule1D gt = gauss_legendre(spec.cell_nodes, bt[i], bt[i + 1]);
        Rule1D gc = gauss_legendre(spec.cell_nodes, bc[j], bc[j + 1]);
        for (size_t a = 0; a < gt.x.size(); ++a)
          for (size_t b = 0; b < gc.x.size(); ++b) add_ring(side * gt.x[a], gc.x[b], gt.w[a] * gc.w[b] * measure(gc.x[b]));
      }
  }
}

void PolarRule::add_ring(double tau, double ang, double w) {
  tau_.push_back(tau);
  ang_.push_back(ang);
  ring_w_.push_back(w * scale_n_);
  Point q;
  q.t = pole_.t + tau;
  q.x.resize(N_);
  const double c = std::cos(ang), s = std::sin(ang);
  for (int a = 0; a < N_; ++a) q.x[a] = c * pole_.x[a] + s * E_[0][a];
  ring_pt_.push_back(std::move(q));
}

Point PolarRule::point(int r, int d) const {
  Point q;
  q.t = pole_.t + tau_[r];
  q.x.resize(N_);
  const double c = std::cos(ang_[r]), s = std::sin(ang_[r]);
  const double* u = dirs_.point(d);
  for (int a = 0; a < N_; ++a) {
    double v = c * pole_.x[a];
    for (int i = 0; i < N_ - 1; ++i) v += s * u[i] * E_[i][a];
    q.x[a] = v;
  }
  return q;
}

}  // namespace conflab
