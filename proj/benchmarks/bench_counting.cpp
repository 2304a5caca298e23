#include <benchmark/benchmark.h>

#include "bohrsets/partition_count.hpp"

using namespace bohrsets;

static void BM_CountSingleLevel(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const PartitionSpec spec(Prime(2), {{n, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(count_partition(spec));
}
BENCHMARK(BM_CountSingleLevel)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_CountTwoLevels(benchmark::State& state) {
  const PartitionSpec spec = PartitionSpec::parse(Prime(3), "3:1,7:2");
  for (auto _ : state) benchmark::DoNotOptimize(count_partition(spec));
}
BENCHMARK(BM_CountTwoLevels)->Unit(benchmark::kMillisecond);

static void BM_CountLogSpace(benchmark::State& state) {
  const PartitionSpec spec = PartitionSpec::parse(Prime(2), "3:1,18:1");
  for (auto _ : state) benchmark::DoNotOptimize(count_partition(spec, CountOptions{1024}));
}
BENCHMARK(BM_CountLogSpace)->Unit(benchmark::kMillisecond);

static void BM_PatternWords(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pattern_words(Prime(5), 6, 2, 2));
}
BENCHMARK(BM_PatternWords)->Unit(benchmark::kMicrosecond);
