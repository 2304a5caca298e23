#include <benchmark/benchmark.h>

#include "bohrsets/enumeration.hpp"
#include "bohrsets/partition.hpp"
#include "bohrsets/partition_sample.hpp"

using namespace bohrsets;

static void BM_ClassifyAllScale4(benchmark::State& state) {
  const Partition partition(PartitionSpec::parse(Prime(2), "4:1"));
  const auto all = all_elements(Prime(2), 4);
  for (auto _ : state) {
    std::uint64_t cells = 0;
    for (const auto& g : all) cells += partition.classify(g).is_cell();
    benchmark::DoNotOptimize(cells);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(all.size()));
}
BENCHMARK(BM_ClassifyAllScale4);

static void BM_ClassifyByDefinitionScale3(benchmark::State& state) {
  const PartitionSpec spec = PartitionSpec::parse(Prime(2), "3:2");
  const auto all = all_elements(Prime(2), 3);
  for (auto _ : state) {
    for (const auto& g : all) benchmark::DoNotOptimize(classify_by_definition(g, spec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(all.size()));
}
BENCHMARK(BM_ClassifyByDefinitionScale3);

// Two- and three-level classification of sampled cell members.
static void BM_ClassifySampled(benchmark::State& state) {
  const char* specs[] = {"3:2,6:2", "3:2,6:2,9:2"};
  const PartitionSpec spec = PartitionSpec::parse(Prime(2), specs[state.range(0)]);
  const CellSampler sampler(spec);
  const Partition partition(spec);
  SplitRng rng(1);
  std::vector<GroupElement> members;
  for (int i = 0; i < 64; ++i) members.push_back(sampler.sample(static_cast<Digit>(i % 2), rng));
  for (auto _ : state) {
    for (const auto& g : members) benchmark::DoNotOptimize(partition.classify(g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(members.size()));
  state.SetLabel(spec.to_string());
}
BENCHMARK(BM_ClassifySampled)->Arg(0)->Arg(1);

static void BM_SampleCell(benchmark::State& state) {
  const CellSampler sampler(PartitionSpec::parse(Prime(2), "3:2,6:2,9:2"));
  SplitRng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(1, rng));
}
BENCHMARK(BM_SampleCell);
