#include <doctest.h>

#include <cmath>
#include <random>

#include "conflab/conformal.hpp"
#include "conflab/error.hpp"

using namespace conflab;

namespace {

Point random_sphere_point(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Point p;
  p.x.resize(N);
  double s = 0;
  for (auto& v : p.x) {
    v = nd(rng);
    s += v * v;
  }
  for (auto& v : p.x) v /= std::sqrt(s);
  return p;
}

Point random_point(const ManifoldModel& m, std::mt19937_64& rng) {
  Point p = random_sphere_point(m.is_product() ? m.n() : m.n() + 1, rng);
  if (m.is_product()) p.t = std::uniform_real_distribution<double>(0, m.ell_internal())(rng);
  return p;
}

FunctionPtr wobble() {
  return make_function([](const auto& at) {
    const auto& p = point_of(at);
    using std::sin;
    return p.x[0] * 0.3 + p.x[1] * p.x[2] * 0.2 + sin(p.t) * 0.1;
  });
}

}  // namespace

TEST_CASE("catalog curvature constants") {
  auto s4 = catalog_build(BackendKind::Sphere, 4);
  CHECK(s4->scalar_curvature() == doctest::Approx(12));
  CHECK(s4->ricci_norm2() == doctest::Approx(36));
  CHECK(s4->q_value() == doctest::Approx(6));
  CHECK(s4->q_value() * s4->volume() == doctest::Approx(16 * kPi * kPi));
  CHECK(catalog_build(BackendKind::Sphere, 5)->q_value() == doctest::Approx(105.0 / 8));
  CHECK(catalog_build(BackendKind::Sphere, 3)->q_value() == doctest::Approx(15.0 / 8));

  auto p3 = catalog_build(BackendKind::ProductS1S2, 3);
  CHECK(p3->scalar_curvature() == doctest::Approx(2));
  CHECK(p3->ricci_norm2() == doctest::Approx(2));
  CHECK(p3->q_value() == doctest::Approx(-9.0 / 8));
  auto p4 = catalog_build(BackendKind::ProductS1S3, 4);
  CHECK(p4->scalar_curvature() == doctest::Approx(6));
  CHECK(std::abs(p4->q_value()) < 1e-13);

  auto s5r = catalog_build(BackendKind::Sphere, 5, CatalogParams{2.0, 0.0});
  CHECK(s5r->q_value() == doctest::Approx(105.0 / 8 / 16));
  CHECK(s5r->volume() == doctest::Approx(32 * unit_sphere_area(5)));
}

TEST_CASE("unsupported backends are rejected") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const LabError& e) {
      return e.code();
    }
    return ErrorCode::ConfigInvalid;
  };
  CHECK(code_of([] { catalog_build(BackendKind::Sphere, 2); }) == ErrorCode::UnsupportedBackend);
  CHECK(code_of([] { catalog_build(BackendKind::Sphere, 8); }) == ErrorCode::UnsupportedBackend);
  CHECK(code_of([] { catalog_build(BackendKind::ProductS1S2, 4); }) == ErrorCode::UnsupportedBackend);
  CHECK(code_of([] { catalog_build(BackendKind::ProductS1S3, 3); }) == ErrorCode::UnsupportedBackend);
}

TEST_CASE("pointwise curvature matches the closed forms") {
  std::mt19937_64 rng(7);
  for (auto [kind, n] : {std::pair{BackendKind::Sphere, 3}, {BackendKind::Sphere, 4}, {BackendKind::Sphere, 6},
                         {BackendKind::ProductS1S2, 3}, {BackendKind::ProductS1S3, 4}}) {
    auto m = catalog_build(kind, n, CatalogParams{1.5, 5.0});
    ConformalFactor id(m);
    for (int trial = 0; trial < 4; ++trial) {
      Point p = random_point(*m, rng);
      auto c = m->chart<4>(p);
      pointwise::Metric<4> g(c.W);
      auto rc = pointwise::ricci(g);
      CHECK(pointwise::scalar_curvature(g, rc).value() == doctest::Approx(m->scalar_curvature()));
      CHECK(pointwise::ricci_norm2(g, rc).value() == doctest::Approx(m->ricci_norm2()));
      CHECK(q_at(id, p) == doctest::Approx(m->q_value()).epsilon(1e-10));
    }
    // Frame Ricci components at the nodes agree with the stored package.
    const auto& b = m->basis();
    for (int j = 0; j < b.node_count(); j += 17) {
      auto c = m->chart<2>(b.node(j));
      auto rc = pointwise::ricci_frame(pointwise::Metric<2>(c.W), c.W.value());
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) CHECK(std::abs(rc[i * n + k] - m->Rc()(j, i, k)) < 1e-12);
    }
  }
}

TEST_CASE("stereographic factor flattens the sphere") {
  auto m = catalog_build(BackendKind::Sphere, 5);
  std::vector<double> s = {0, 0, 0, 0, 0, 1};
  auto f = ConformalFactor::from_log(m, make_function([s](const auto& at) {
                                       const auto& p = point_of(at);
                                       auto dot = p.x[0] * s[0];
                                       for (int a = 1; a < 6; ++a) dot += p.x[a] * s[a];
                                       using std::log;
                                       return -log(1.0 - dot);
                                     }));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Point p = random_point(*m, rng);
    if (p.x[5] > 0.8) continue;
    CHECK(std::abs(q_at(f, p)) < 1e-9);
    auto c = m->chart<2>(p);
    auto rc = pointwise::ricci_frame(f.metric_at(c), c.W.value());
    for (double v : rc) CHECK(std::abs(v) < 1e-9);
  }
}

TEST_CASE("covariance and direct Q agree") {
  for (auto [kind, n] : {std::pair{BackendKind::Sphere, 3}, {BackendKind::Sphere, 4}, {BackendKind::Sphere, 5},
                         {BackendKind::ProductS1S2, 3}, {BackendKind::ProductS1S3, 4}}) {
    auto m = catalog_build(kind, n, {}, BasisSpec{2, 3, 0});
    auto f = ConformalFactor::from_log(m, wobble());
    auto a = conformal_q(*m, f), b = conformal_q_direct(*m, f);
    double err = 0, scale = 1;
    for (size_t j = 0; j < a.grid().size(); ++j) {
      err = std::max(err, std::abs(a.grid()[j] - b.grid()[j]));
      scale = std::max(scale, std::abs(b.grid()[j]));
    }
    CHECK(err / scale < 1e-10);
    CHECK(f.consistent());
  }
}

TEST_CASE("Moebius pullbacks keep the round Q") {
  std::mt19937_64 rng(11);
  for (int n : {4, 5, 6}) {
    auto m = catalog_build(BackendKind::Sphere, n);
    for (int trial = 0; trial < 3; ++trial) {
      MoebiusMap phi = MoebiusMap::random(n, rng);
      auto f = ConformalFactor::from_log(m, phi.log_factor());
      for (int k = 0; k < 4; ++k) {
        Point p = random_point(*m, rng);
        Point q = phi.apply(p);
        double r2 = 0;
        for (double v : q.x) r2 += v * v;
        CHECK(r2 == doctest::Approx(1.0));
        CHECK(q_at(f, p) == doctest::Approx(m->q_value()).epsilon(1e-9));
        // Stretch of a tangent vector is e^w.
        auto E = tangent_basis(p.x);
        const double h = 1e-6;
        Point pp = p, pm = p;
        for (int a = 0; a <= n; ++a) {
          pp.x[a] += h * E[0][a];
          pm.x[a] -= h * E[0][a];
        }
        Point qp = phi.apply(pp), qm = phi.apply(pm);
        double d2 = 0;
        for (int a = 0; a <= n; ++a) d2 += std::pow(qp.x[a] - qm.x[a], 2);
        CHECK(std::sqrt(d2) / (2 * h) == doctest::Approx(std::exp(phi.log_factor()->value(p))).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("factor conventions") {
  auto m = catalog_build(BackendKind::Sphere, 5);
  auto rho = make_function([](const auto& at) { return point_of(at).x[0] * 0.5 + 2.0; });
  auto f = ConformalFactor::from_rho(m, rho, Convention::Paneitz);
  Point p{0.0, {0.6, 0.8, 0, 0, 0, 0}};
  CHECK(f.rho(p, Convention::Paneitz) == doctest::Approx(2.3));
  CHECK(f.w(p) == doctest::Approx(std::log(2.3) * 2.0));
  CHECK(f.consistent());
  auto bad = make_function([](const auto& at) { return point_of(at).x[0]; });
  CHECK_THROWS_AS(ConformalFactor::from_rho(m, bad, Convention::Metric), LabError);
  CHECK_THROWS_AS(ConformalFactor::exponent(4, Convention::Paneitz), LabError);
}
