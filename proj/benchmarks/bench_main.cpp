#include <benchmark/benchmark.h>

#include <cmath>

#include "pcmq/combinatorics.hpp"
#include "pcmq/frames.hpp"
#include "pcmq/limit_error.hpp"
#include "pcmq/quantization.hpp"
#include "pcmq/special_fn.hpp"

using namespace pcmq;

static void BM_BesselJ(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::bessel_j(2.5, x));
}
BENCHMARK(BM_BesselJ)->Arg(1)->Arg(10)->Arg(50)->Arg(1000);

// cost grows with the number of breakpoints, roughly R
static void BM_IntegralQuadrature(benchmark::State& state) {
  const double R = static_cast<double>(state.range(0)) + 0.375;
  integral_even(R, 1.0, 2, LimitMethod::Quadrature, 1e-12);  // node tables are built on first use
  for (auto _ : state)
    benchmark::DoNotOptimize(integral_even(R, 1.0, 2, LimitMethod::Quadrature, 1e-12));
}
BENCHMARK(BM_IntegralQuadrature)->RangeMultiplier(10)->Range(10, 10000)->Unit(benchmark::kMicrosecond);

static void BM_IntegralSeries(benchmark::State& state) {
  const double R = static_cast<double>(state.range(0)) + 0.375;
  const double ref = integral_even(R, 1.0, 2, LimitMethod::Quadrature, 1e-14).value;
  for (auto _ : state)
    benchmark::DoNotOptimize(integral_even(R, 1.0, 2, LimitMethod::BesselSeries, 1e-8 * std::abs(ref)));
}
BENCHMARK(BM_IntegralSeries)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const QuantScheme q(1.0);
  const auto x = make_signal({0.0, 0.0, 20.3}, q);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_limit(x, q, static_cast<std::size_t>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_FrameReconstruction(benchmark::State& state) {
  const auto frame = fibonacci_sphere_frame(static_cast<std::size_t>(state.range(0)));
  const QuantScheme q(1.0);
  const auto x = make_signal({0.0, 0.0, 20.3}, q);
  for (auto _ : state) benchmark::DoNotOptimize(quantize_and_reconstruct(x, frame, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FrameReconstruction)->Arg(1000)->Arg(200000)->Unit(benchmark::kMicrosecond);

static void BM_IdentitySuites(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(comb::run_identity_suites(static_cast<long>(state.range(0))));
}
BENCHMARK(BM_IdentitySuites)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
