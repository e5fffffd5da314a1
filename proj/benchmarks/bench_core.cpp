#include "csfh/csf_sim.hpp"
#include "csfh/diffpoly.hpp"
#include "csfh/harnack_search.hpp"
#include "csfh/harnack_verify.hpp"

#include <benchmark/benchmark.h>

using namespace csfh;

static void BM_TimeDerivative(benchmark::State& state) {
  const DiffPoly p = DiffPoly::u(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(d_t(p));
}
BENCHMARK(BM_TimeDerivative)->DenseRange(1, 4);

static void BM_HeatRemainder(benchmark::State& state) {
  const DiffPoly h = search::symbolic_ansatz();
  for (auto _ : state) benchmark::DoNotOptimize(heat_remainder(h));
}
BENCHMARK(BM_HeatRemainder);

static void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sim::Curve curve = sim::make_ellipse(2.0, 1.0, n);
  const double dt = sim::stable_dt(curve);
  for (auto _ : state) benchmark::DoNotOptimize(sim::step(curve, dt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Step)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

static void BM_Resample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sim::Curve curve = sim::make_ellipse(2.0, 1.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(sim::resample(curve, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Resample)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

static void BM_EvaluateH(benchmark::State& state) {
  sim::FlowConfig cfg;
  cfg.n_points = 256;
  cfg.t_end = 0.2;
  const auto trace = sim::run(sim::make_ellipse(2.0, 1.0, 256), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(verify::evaluate_h(trace, {0.01}));
}
BENCHMARK(BM_EvaluateH)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
