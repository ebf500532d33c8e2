#include <benchmark/benchmark.h>

#include "conflab/green.hpp"
#include "conflab/operators.hpp"
#include "conflab/verify.hpp"

using namespace conflab;

namespace {

Point north(const ManifoldModel& m) { return default_poles(m, 1).front(); }

void BM_ApplyP_Sphere(benchmark::State& st) {
  auto m = catalog_build(BackendKind::Sphere, static_cast<int>(st.range(0)), {}, BasisSpec{0, 4, 0});
  std::mt19937_64 rng(7);
  std::vector<double> c(m->basis().size());
  for (auto& v : c) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  auto phi = ScalarField::from_coefficients(m->basis_ptr(), c);
  for (auto _ : st) benchmark::DoNotOptimize(apply_P(*m, phi));
}
BENCHMARK(BM_ApplyP_Sphere)->Arg(3)->Arg(4)->Arg(5);

void BM_ProductGreenEval(benchmark::State& st) {
  auto m = catalog_build(BackendKind::ProductS1S2, 3, {}, BasisSpec{2, 4, 0});
  auto g = make_green(ConformalFactor(m), OperatorTag::P, north(*m), GreenCutoff{static_cast<int>(st.range(0))});
  const auto& nodes = m->basis().nodes();
  size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(g->value(nodes[i]));
    i = (i + 1) % nodes.size();
  }
}
BENCHMARK(BM_ProductGreenEval)->Arg(3)->Arg(6)->Arg(12);

void BM_CompareGreen_S5(benchmark::State& st) {
  auto m = catalog_build(BackendKind::Sphere, 5, {}, BasisSpec{0, 2, 0});
  ConformalFactor f(m);
  auto gl = make_green(f, OperatorTag::L, north(*m));
  auto gp = make_green(f, OperatorTag::P, north(*m));
  for (auto _ : st) benchmark::DoNotOptimize(compare_green(*gl, *gp));
}
BENCHMARK(BM_CompareGreen_S5)->Unit(benchmark::kMillisecond);

void BM_TotalQ_S4(benchmark::State& st) {
  auto m = catalog_build(BackendKind::Sphere, 4, {}, BasisSpec{0, 4, 0});
  ConformalFactor f(m);
  const Point p = north(*m);
  for (auto _ : st) benchmark::DoNotOptimize(check_total_q(f, p, VerifySettings{}));
}
BENCHMARK(BM_TotalQ_S4)->Unit(benchmark::kMillisecond);

void BM_TotalQ_S1xS3(benchmark::State& st) {
  auto m = catalog_build(BackendKind::ProductS1S3, 4, {}, BasisSpec{2, 4, 0});
  ConformalFactor f(m);
  const Point p = north(*m);
  VerifySettings s;
  s.green.L = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(check_total_q(f, p, s));
}
BENCHMARK(BM_TotalQ_S1xS3)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
