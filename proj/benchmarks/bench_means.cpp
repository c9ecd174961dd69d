#include <benchmark/benchmark.h>

#include "wmeans/catalog.hpp"
#include "wmeans/expr.hpp"
#include "wmeans/homogenize.hpp"
#include "wmeans/sampling.hpp"

namespace {

wmeans::WeightedSample sample_of_size(std::size_t n) {
  wmeans::SamplePlan plan;
  plan.n_min = plan.n_max = n;
  plan.degenerate_rate = 0.0;
  wmeans::SampleRng rng(plan.seed, 0);
  return wmeans::draw_sample(plan, rng);
}

void BM_PowerMean(benchmark::State& state) {
  const auto s = sample_of_size(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wmeans::power_mean(s, 2.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PowerMean)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_QuasiArithmeticCosh(benchmark::State& state) {
  const auto s = sample_of_size(static_cast<std::size_t>(state.range(0)));
  const auto f = wmeans::catalog::cosh();
  for (auto _ : state) benchmark::DoNotOptimize(wmeans::quasiarithmetic_mean(s, f));
}
BENCHMARK(BM_QuasiArithmeticCosh)->Arg(6)->Arg(64);

void BM_SemidevMeans(benchmark::State& state) {
  const auto s = sample_of_size(6);
  const auto E = state.range(0) == 0 ? wmeans::catalog::sign_dev() : wmeans::catalog::parse_kernel("cosh");
  wmeans::SemidevMeanConfig cfg;
  cfg.grid_size = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(wmeans::semidev_means(E, s, cfg));
}
BENCHMARK(BM_SemidevMeans)->ArgsProduct({{0, 1}, {256, 1024, 4096}});

void BM_ExpressionKernel(benchmark::State& state) {
  const auto E = wmeans::catalog::parse_kernel("expr:cosh(x) - cosh(y)");
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(E(x, 1.25));
    x += 1e-9;
  }
}
BENCHMARK(BM_ExpressionKernel);

void BM_LocalHomogenization(benchmark::State& state) {
  const auto s = sample_of_size(6);
  const auto M = wmeans::qa_handle(wmeans::catalog::cosh());
  for (auto _ : state) benchmark::DoNotOptimize(wmeans::local_homogenization(M, s).value());
}
BENCHMARK(BM_LocalHomogenization)->Unit(benchmark::kMicrosecond);

void BM_Envelope(benchmark::State& state) {
  auto M = wmeans::qa_handle(wmeans::catalog::exp());
  M.domain = wmeans::IntervalDomain::open(0.0, 8.0);
  const auto s = sample_of_size(6);
  for (auto _ : state) benchmark::DoNotOptimize(wmeans::envelope(M, s, wmeans::EnvelopeSide::Upper).value);
}
BENCHMARK(BM_Envelope)->Unit(benchmark::kMicrosecond);

void BM_HomogeneousSemidevMean(benchmark::State& state) {
  const auto s = sample_of_size(6);
  const wmeans::HomogenizedKernel h(wmeans::catalog::parse_kernel("cosh"));
  // First pass fills the memo; the loop measures warm lookups.
  benchmark::DoNotOptimize(wmeans::homogeneous_semidev_mean(h, s, wmeans::MeanKind::LowerWeak));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmeans::homogeneous_semidev_mean(h, s, wmeans::MeanKind::LowerWeak));
  }
}
BENCHMARK(BM_HomogeneousSemidevMean)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
