#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "regvar/regvar.hpp"

using namespace regvar;

static void BM_Circle(benchmark::State& state) {
  const PopaParam p = PopaParam::finite(1.5);
  double x = 0.3;
  for (auto _ : state) {
    x = raw::circle(p, x, -0.2);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Circle);

static void BM_HaarIntegrate(benchmark::State& state) {
  const Interval iv(PopaParam::finite(1), 0.0, 5.0);
  const RealFn f = [](double t) { return std::exp(-t) * std::cos(3 * t); };
  for (auto _ : state) benchmark::DoNotOptimize(haar_integrate(f, iv, QuadratureSpec{}).value);
}
BENCHMARK(BM_HaarIntegrate);

static void BM_Fourier(benchmark::State& state) {
  const PopaParam p = PopaParam::infinity();
  const RealFn f = from_pullback([](double t) { return t * std::exp(-t); }, p);
  const double gamma = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_popa(f, p, gamma, QuadratureSpec{}).value);
}
BENCHMARK(BM_Fourier)->Arg(0)->Arg(5)->Arg(50);

static void BM_EstimateKernel(benchmark::State& state) {
  const SampledFunction f = [](double x) { return x * x * (1.0 + 1.0 / std::log(x)); };
  const SampledFunction one = SampledFunction::constant(1.0);
  const std::vector<double> ts = {0.5, 2.0, 3.0, 5.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_kernel(KernelRequest{}, f, one, one, ts, LimitScheme{}));
  }
}
BENCHMARK(BM_EstimateKernel);

static void BM_BeckSum(benchmark::State& state) {
  const RealFn one = [](double) { return 1.0; };
  const double delta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(beck_riemann_sum(one, PopaParam::finite(1), delta, 1.0));
}
BENCHMARK(BM_BeckSum)->Arg(100)->Arg(10000);

BENCHMARK_MAIN();
