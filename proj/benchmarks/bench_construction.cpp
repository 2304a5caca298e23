#include <benchmark/benchmark.h>

#include "bohrsets/construction.hpp"

using namespace bohrsets;

static void BM_DisjointnessExhaustive(benchmark::State& state) {
  const auto params = ConstructionParams::preset("p2-single");
  for (auto _ : state) benchmark::DoNotOptimize(verify_disjointness(params, {}));
}
BENCHMARK(BM_DisjointnessExhaustive)->Unit(benchmark::kMicrosecond);

static void BM_DisjointnessSampled(benchmark::State& state) {
  const auto params = ConstructionParams::preset("p2-double");
  VerifyOptions options;
  options.mode = Mode::sampled;
  options.samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_disjointness(params, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DisjointnessSampled)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

static void BM_DifferenceThreshold(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem2_brute(Prime(2), 2, {}));
}
BENCHMARK(BM_DifferenceThreshold)->Unit(benchmark::kMillisecond);
