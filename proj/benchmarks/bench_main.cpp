#include <benchmark/benchmark.h>

#include <vector>

#include "fptkit/distributions.hpp"
#include "fptkit/fitting.hpp"
#include "fptkit/gini.hpp"
#include "fptkit/pipeline.hpp"
#include "fptkit/renewal.hpp"
#include "fptkit/specfun.hpp"

using namespace fptkit;

static void BM_MLSurvival(benchmark::State& state) {
  const MittagLeffler ml(0.96);
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(ml.survival(x));
}
BENCHMARK(BM_MLSurvival)->Arg(5)->Arg(40)->Arg(200)->Arg(10000);

static void BM_MLDensity(benchmark::State& state) {
  const MittagLeffler ml(0.96);
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(ml.density(x));
}
BENCHMARK(BM_MLDensity)->Arg(5)->Arg(200)->Arg(10000);

static void BM_IncompleteGamma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reg_lower_incomplete_gamma(2.7, 3.1));
}
BENCHMARK(BM_IncompleteGamma);

static void BM_TailWeibullWaitingTime(benchmark::State& state) {
  const auto p = TailWeibullParams::make(0.585, 49.63, 4.67, 18000.0);
  for (auto _ : state) benchmark::DoNotOptimize(tail_weibull_waiting_time(p).w);
}
BENCHMARK(BM_TailWeibullWaitingTime);

static void BM_TruncatedMLWaitingTime(benchmark::State& state) {
  const TruncatedMLParams p{0.96, 12.0, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ml_truncated_waiting_time(p).w);
}
BENCHMARK(BM_TruncatedMLWaitingTime)->Arg(100)->Arg(12000)->Unit(benchmark::kMillisecond);

static void BM_GiniAnalytic(benchmark::State& state) {
  const double r_max = static_cast<double>(state.range(0));
  const TruncatedML ml({0.96, 12.0, r_max});
  for (auto _ : state) benchmark::DoNotOptimize(gini_analytic(ml, r_max, 512));
}
BENCHMARK(BM_GiniAnalytic)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_GiniEmpirical(benchmark::State& state) {
  const auto s = sample_durations(Weibull({1.0, 1.0}), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gini_empirical(s));
}
BENCHMARK(BM_GiniEmpirical)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_SimulateAndProbe(benchmark::State& state) {
  const Weibull w({0.585, 49.63});
  for (auto _ : state) {
    const auto t = simulate_renewal(w, 1000000, 7);
    benchmark::DoNotOptimize(residual_life_probe(t, 100000, 8).mean_residual);
  }
}
BENCHMARK(BM_SimulateAndProbe)->Unit(benchmark::kMillisecond);

static void BM_TailFit(benchmark::State& state) {
  const auto p = TailWeibullParams::make(0.585, 49.63, 4.67, 18000.0);
  const auto s = sample_durations(TailWeibull(p), 1000000, 9);
  for (auto _ : state) benchmark::DoNotOptimize(tail_exponent_fit(s, 18000.0).gamma);
}
BENCHMARK(BM_TailFit)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
