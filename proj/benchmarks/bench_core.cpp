#include <benchmark/benchmark.h>

#include "tcdirac/assembly.hpp"
#include "tcdirac/quadrature.hpp"
#include "tcdirac/shapes.hpp"
#include "tcdirac/solver.hpp"

namespace {

using namespace tcdirac;

void BM_TriangleQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    auto rule = triangle_quadrature(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(rule.w.data());
  }
}
BENCHMARK(BM_TriangleQuadrature)->Arg(20)->Arg(25);

void BM_ShapeEval(benchmark::State& state) {
  const ShapeSet shapes(10);
  const QuadratureRule rule = triangle_quadrature(25);
  std::vector<Real> v(shapes.size()), dx(shapes.size()), dy(shapes.size());
  for (auto _ : state) {
    for (size_t q = 0; q < rule.size(); ++q)
      shapes.evaluate(rule.x[q], rule.y[q], v.data(), dx.data(), dy.data());
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ShapeEval);

void BM_TransformMap(benchmark::State& state) {
  const TransformSpec spec = make_transform(8, 40.0, 2.0);
  for (auto _ : state) {
    Real acc = 0;
    for (int i = 1; i <= 1000; ++i) acc += eval_xi(spec, spec.s_max * i / 1001).xi;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_TransformMap);

void BM_AssembleRelativistic(benchmark::State& state) {
  const PhysicalSystem sys = PhysicalSystem::make(1, 1, 2.0, Mode::relativistic);
  const TransformSpec spec = make_transform(8, 40.0, sys.R);
  const int m = static_cast<int>(state.range(0));
  const Mesh mesh = build_mesh(m, 10, spec.s_max);
  const ShapeSet shapes(10);
  for (auto _ : state) {
    auto as = assemble_system(mesh, shapes, sys, spec, -1.1, 9, 25);
    benchmark::DoNotOptimize(as.A_vals.data());
  }
}
BENCHMARK(BM_AssembleRelativistic)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MinmaxSolve(benchmark::State& state) {
  const PhysicalSystem sys = PhysicalSystem::make(1, 1, 2.0, Mode::relativistic);
  const TransformSpec spec = make_transform(8, 40.0, sys.R);
  const Mesh mesh = build_mesh(2, 6, spec.s_max);
  SolverConfig cfg;
  cfg.n_I = 20;
  for (auto _ : state) {
    auto r = minmax_solve(mesh, sys, spec, cfg);
    benchmark::DoNotOptimize(r.energy);
  }
}
BENCHMARK(BM_MinmaxSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
