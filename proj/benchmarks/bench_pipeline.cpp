#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pgsum/bench.hpp"
#include "pgsum/epg.hpp"
#include "pgsum/reconstruct.hpp"
#include "pgsum/sampler.hpp"
#include "pgsum/unfold.hpp"

namespace {

pgsum::PathLaplacian random_path(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::vector<double> weights(n - 1);
  for (double& x : weights) x = w(rng);
  return {std::move(weights), std::vector<double>(n, 0.0)};
}

void BM_BuildEpg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto feats = pgsum::random_walk_features(n, 512, 2.0f, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pgsum::build_epg(feats, 2, 6.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildEpg)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

void BM_Unfold(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = pgsum::build_epg(pgsum::random_walk_features(n, 16, 2.0f, 2), 4, 6.0);
  for (auto _ : state) benchmark::DoNotOptimize(pgsum::unfold(g, 2.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Unfold)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

void BM_SampleBudget(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = pgsum::build_operator(random_path(n, 3), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(pgsum::sample_budget(op, n / 100, 1e-9));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleBudget)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

void BM_SampleBudgetSelfLoops(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = pgsum::build_epg(pgsum::random_walk_features(n, 16, 2.0f, 4), 2, 6.0);
  const auto op = pgsum::build_operator(pgsum::unfold(g, 0.0), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(pgsum::sample_budget(op, n / 100, 1e-9));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleBudgetSelfLoops)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

void BM_GlrReconstruct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto l = random_path(n, 5);
  std::vector<std::uint8_t> h(n, 0);
  for (std::size_t i = 0; i < n; i += 20) h[i] = 1;
  std::vector<double> x(n, 1.0);
  const auto y = pgsum::observe(x, h);
  for (auto _ : state) benchmark::DoNotOptimize(pgsum::glr_reconstruct(l, 0.05, h, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GlrReconstruct)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
