#include <benchmark/benchmark.h>

#include <cmath>

#include "dphase/energy.hpp"
#include "dphase/modular_space.hpp"
#include "dphase/rayleigh_solver.hpp"

using namespace dphase;

namespace {

ProblemSpec spec_1d(int n) {
  const auto d = Domain::interval(0.0, 1.0);
  auto m = Mesh::interval(d, n);
  auto k = [&](double p) { return make_power_kernel(ExponentField::constant(d, p)); };
  return ProblemSpec::create(m, k(2.0), k(5.0), k(3.5), GridFunction(m), {3.0, 4.0});
}

GridFunction bump(const MeshPtr& m) {
  return interpolate([](const Point& x) { return std::sin(M_PI * x[0]); }, m);
}

}  // namespace

static void BM_Assemble(benchmark::State& state) {
  const auto spec = spec_1d(static_cast<int>(state.range(0)));
  const auto u = bump(spec.mesh_ptr());
  for (auto _ : state) benchmark::DoNotOptimize(assemble(u, spec, kEnergyGradients));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assemble)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_AssembleVariable2D(benchmark::State& state) {
  const auto d = Domain::rectangle(0, 1, 0, 1);
  const int n = static_cast<int>(state.range(0));
  auto m = Mesh::rectangle(d, n, n);
  const auto p1 = ExponentField::from_expression(d, Expression::parse("1.8 + 0.1 * x"));
  const auto spec = ProblemSpec::create(
      m, make_mean_curvature_kernel(p1), make_power_kernel(ExponentField::constant(d, 3.2)),
      make_power_kernel(ExponentField::constant(d, 2.5)), GridFunction(m), {2.0, 3.0});
  const auto u = interpolate([](const Point& x) { return std::sin(M_PI * x[0]) * std::sin(M_PI * x[1]); }, m);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(u, spec, kEnergyGradients));
}
BENCHMARK(BM_AssembleVariable2D)->Arg(16)->Arg(32)->Arg(64);

static void BM_Luxemburg(benchmark::State& state) {
  const auto d = Domain::interval(0.0, 1.0);
  auto m = Mesh::interval(d, static_cast<int>(state.range(0)));
  const auto p = ExponentField::from_expression(d, Expression::parse("2 + x"));
  const auto u = bump(m) * 7.0;
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(u, p));
}
BENCHMARK(BM_Luxemburg)->Arg(256)->Arg(4096);

static void BM_MinimizeR1(benchmark::State& state) {
  const auto spec = spec_1d(static_cast<int>(state.range(0)));
  QuotientConfig cfg;
  cfg.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_r1(spec, cfg).value);
}
BENCHMARK(BM_MinimizeR1)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
