#include <benchmark/benchmark.h>

#include "bohrsets/bohr.hpp"

using namespace bohrsets;

namespace {

GroupSubset shifted_ball(unsigned scale, unsigned n, unsigned k) {
  const Prime p(2);
  GroupSubset s(p, scale);
  const GroupElement one = GroupElement::constant(p, n, FieldValue(p, 1));
  for (const auto& u : enumerate_ball(p, BallSpec(n, k))) s.insert(u + one);
  return s;
}

}  // namespace

// Full coverage at scale 3, d <= 2: every span is visited.
static void BM_DenseTransform(benchmark::State& state) {
  const GroupSubset s = shifted_ball(3, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(dense_upto(s, 2, DensityOptions{true, {}}));
}
BENCHMARK(BM_DenseTransform)->Unit(benchmark::kMicrosecond);

static void BM_DenseGeneric(benchmark::State& state) {
  const GroupSubset s = shifted_ball(3, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(dense_upto(s, 2, DensityOptions{false, {}}));
}
BENCHMARK(BM_DenseGeneric)->Unit(benchmark::kMillisecond);

static void BM_DenseScale4(benchmark::State& state) {
  GroupSubset s = shifted_ball(4, 4, 2);
  for (const auto& g : shifted_ball(3, 3, 1).members()) s.insert(g);
  for (auto _ : state) benchmark::DoNotOptimize(dense_upto(s, 2));
}
BENCHMARK(BM_DenseScale4)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_EnumerateSystems(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_systems(Prime(3), 2, 2, true));
}
BENCHMARK(BM_EnumerateSystems)->Unit(benchmark::kMillisecond);
