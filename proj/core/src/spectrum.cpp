#include "conflab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "conflab/error.hpp"

namespace conflab {

std::vector<EigenLevel> eigen_levels(const SpectralSymbol& s) {
  const auto& ev = s.eigenvalues;
  std::vector<int> order(ev.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ev[a] < ev[b]; });
  const double tie = 1e-10 * std::max(1.0, s.max_abs());
  std::vector<EigenLevel> levels;
  for (int i : order) {
    if (levels.empty() || ev[i] - levels.back().value > tie) levels.push_back({ev[i], 0, {}});
    levels.back().multiplicity++;
    levels.back().modes.push_back(i);
  }
  return levels;
}

double lambda1_L(const ManifoldModel& m) {
  const auto s = build_symbol(m, OperatorTag::L);
  return *std::min_element(s.eigenvalues.begin(), s.eigenvalues.end());
}

namespace {

double p_norm_power(const ManifoldModel& m, const std::vector<double>& grid, double p) {
  const auto& w = m.volume_weights();
  double s = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) s += w[i] * std::pow(std::abs(grid[i]), p);
  return s;
}

double sobolev_exponent(int n) { return 2.0 * n / (n - 2.0); }

}  // namespace

double yamabe_quotient(const ManifoldModel& m, const ScalarField& phi) {
  const auto c = phi.has_coefficients() ? phi.coefficients() : project(phi).coefficients();
  const auto s = build_symbol(m, OperatorTag::L);
  double energy = 0.0;
  for (size_t i = 0; i < c.size(); ++i) energy += s.eigenvalues[i] * c[i] * c[i];
  const double p = sobolev_exponent(m.n());
  const double B = p_norm_power(m, synthesize(phi).grid(), p);
  if (!(B > 0.0)) throw LabError(ErrorCode::ZeroFunction, "Yamabe quotient of the zero function");
  return energy / std::pow(B, 2.0 / p);
}

double round_sphere_yamabe(int n) {
  return n * (n - 1.0) * std::pow(unit_sphere_area(n), 2.0 / n);
}

YamabeDescent minimize_yamabe(const ManifoldModel& m, int dim, std::uint64_t seed, int max_iter) {
  const ModeBasis& b = m.basis();
  dim = std::min(dim, b.size());
  const auto s = build_symbol(m, OperatorTag::L);
  const double p = sobolev_exponent(m.n());
  const auto& table = b.table();
  const auto& w = m.volume_weights();
  const int N = b.node_count(), M = b.size();

  auto grid_of = [&](const std::vector<double>& c) {
    std::vector<double> g(N, 0.0);
    for (int q = 0; q < N; ++q)
      for (int i = 0; i < dim; ++i) g[q] += table[q * M + i] * c[i];
    return g;
  };
  auto quotient = [&](const std::vector<double>& c, std::vector<double>* grad) {
    const auto g = grid_of(c);
    double A = 0.0;
    for (int i = 0; i < dim; ++i) A += s.eigenvalues[i] * c[i] * c[i];
    const double B = p_norm_power(m, g, p);
    const double Bq = std::pow(B, 2.0 / p);
    if (grad) {
      grad->assign(dim, 0.0);
      for (int i = 0; i < dim; ++i) {
        double dB = 0.0;
        for (int q = 0; q < N; ++q) dB += w[q] * p * std::pow(std::abs(g[q]), p - 2.0) * g[q] * table[q * M + i];
        (*grad)[i] = 2.0 * s.eigenvalues[i] * c[i] / Bq - A * (2.0 / p) * dB / (Bq * B);
      }
    }
    return A / Bq;
  };
  auto normalize = [](std::vector<double>& c) {
    double r = 0.0;
    for (double v : c) r += v * v;
    r = std::sqrt(r);
    for (double& v : c) v /= r;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> c(dim);
  for (double& v : c) v = 0.5 * nd(rng);
  c[0] = 1.0 + std::abs(c[0]);
  normalize(c);

  YamabeDescent out;
  std::vector<double> g;
  double val = quotient(c, &g);
  out.start_value = val;
  double step = 1e-2;
  int it = 0;
  for (; it < max_iter; ++it) {
    // The quotient is scale invariant: drop the radial part of the gradient, then renormalize.
    const double radial = std::inner_product(g.begin(), g.end(), c.begin(), 0.0);
    for (int i = 0; i < dim; ++i) g[i] -= radial * c[i];
    const double gn = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
    if (gn < 1e-12 * std::max(1.0, std::abs(val))) break;
    bool moved = false;
    while (step > 1e-14) {
      std::vector<double> trial(dim);
      for (int i = 0; i < dim; ++i) trial[i] = c[i] - step * g[i] / gn;
      normalize(trial);
      const double tv = quotient(trial, nullptr);
      if (tv < val) {
        c = trial;
        val = quotient(c, &g);
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  out.value = val;
  out.iterations = it;
  out.coefficients = c;
  return out;
}

SpectrumSummary spectrum_summary(const ManifoldModel& m, OperatorTag tag) {
  const auto sym = build_symbol(m, tag);
  SpectrumSummary out;
  out.op = tag;
  out.levels = eigen_levels(sym);
  out.lambda1 = out.levels.front().value;
  const double zero = 1e-10 * std::max(1.0, sym.max_abs());
  for (int i = 0; i < static_cast<int>(out.levels.size()); ++i) {
    const auto& lv = out.levels[i];
    if (std::abs(lv.value) <= zero) {
      out.kernel_dimension = lv.multiplicity;
      for (int mode : lv.modes)
        if (mode != 0) out.kernel_is_constants = false;
    } else if (lv.value > 0 && out.smallest_positive < 0) {
      out.smallest_positive = i;
    } else if (lv.value < 0) {
      out.largest_negative = i;
    }
  }
  return out;
}

SpectrumSummary paneitz_spectrum_check(const ModelPtr& m, std::optional<SignVerdict> green_sign) {
  SpectrumSummary out = spectrum_summary(*m, OperatorTag::P);
  if (!green_sign && out.kernel_dimension == 0) {
    const int N = m->is_product() ? m->m() + 1 : m->n() + 1;
    Point pole;
    pole.x.assign(N, 0.0);
    pole.x[N - 1] = 1.0;
    try {
      green_sign = sign_scan(*make_green(ConformalFactor(m), OperatorTag::P, pole)).verdict;
    } catch (const LabError&) {
    }
  }
  out.green_sign = green_sign;
  if (!green_sign || *green_sign == SignVerdict::Mixed) return out;

  const bool positive = *green_sign == SignVerdict::Positive;
  out.extremal = positive ? out.smallest_positive : out.largest_negative;
  out.claims_asserted = true;
  if (out.extremal < 0) return out;
  const EigenLevel& lv = out.levels[out.extremal];
  out.simple = lv.multiplicity == 1;

  const ModeBasis& b = m->basis();
  const auto& table = b.table();
  out.extremal_min = INFINITY;
  out.extremal_max = -INFINITY;
  for (int q = 0; q < b.node_count(); ++q) {
    double v = 0.0;
    for (int mode : lv.modes) v += table[q * b.size() + mode];
    out.extremal_min = std::min(out.extremal_min, v);
    out.extremal_max = std::max(out.extremal_max, v);
  }
  out.sign_definite = out.simple && (out.extremal_min > 0.0 || out.extremal_max < 0.0);

  out.ordering = true;
  const double bound = std::abs(lv.value);
  for (const auto& other : out.levels)
    if ((positive ? other.value < 0 : other.value > 0) && !(std::abs(other.value) > bound)) out.ordering = false;
  return out;
}

void write_spectrum_csv(std::ostream& os, const SpectrumSummary& s) {
  os << "rank,eigenvalue,multiplicity,extremal_flag\n";
  os.precision(17);
  for (size_t i = 0; i < s.levels.size(); ++i)
    os << i << ',' << s.levels[i].value << ',' << s.levels[i].multiplicity << ','
       << (static_cast<int>(i) == s.extremal ? 1 : 0) << '\n';
}

}  // namespace conflab
