#include <benchmark/benchmark.h>

#include "condphoton/add.hpp"
#include "condphoton/numerics.hpp"
#include "condphoton/subtract.hpp"

using namespace condphoton;

namespace {

void BM_ThermalDistribution(benchmark::State& state) {
  const double n0 = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thermal_distribution(n0));
}
BENCHMARK(BM_ThermalDistribution)->RangeMultiplier(10)->Range(1, 10000);

void BM_SubtractExact(benchmark::State& state) {
  const auto p = thermal_distribution(static_cast<double>(state.range(0)));
  const auto bs = BeamSplitterParams::from_reflectivity(1e-2);
  for (auto _ : state) benchmark::DoNotOptimize(subtract_exact(p, bs, DetectorModel::nonresolving(1)));
}
BENCHMARK(BM_SubtractExact)->RangeMultiplier(10)->Range(1, 10000);

void BM_SubtractExactStatistics(benchmark::State& state) {
  const auto p = thermal_distribution(static_cast<double>(state.range(0)));
  const auto bs = BeamSplitterParams::from_reflectivity(1e-2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(subtract_exact_statistics(p, bs, DetectorModel::nonresolving(2)));
  }
}
BENCHMARK(BM_SubtractExactStatistics)->RangeMultiplier(10)->Range(1, 10000);

void BM_SubtractSequential(benchmark::State& state) {
  const auto p = thermal_distribution(static_cast<double>(state.range(0)));
  const auto bs = BeamSplitterParams::from_reflectivity(1e-2);
  for (auto _ : state) benchmark::DoNotOptimize(subtract_sequential(p, bs, 2));
}
BENCHMARK(BM_SubtractSequential)->RangeMultiplier(10)->Range(1, 10000);

void BM_AddExact(benchmark::State& state) {
  const auto p = thermal_distribution(static_cast<double>(state.range(0)));
  const auto pdc = PdcParams::from_lambda(1e-2);
  for (auto _ : state) benchmark::DoNotOptimize(add_exact(p, pdc, DetectorModel::resolving(1)));
}
BENCHMARK(BM_AddExact)->RangeMultiplier(10)->Range(1, 10000);

void BM_AddExactStatistics(benchmark::State& state) {
  const auto p = thermal_distribution(static_cast<double>(state.range(0)));
  const auto pdc = PdcParams::from_lambda(1e-2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(add_exact_statistics(p, pdc, DetectorModel::nonresolving(1)));
  }
}
BENCHMARK(BM_AddExactStatistics)->RangeMultiplier(10)->Range(1, 10000);

void BM_LaguerreRecurrence(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laguerre(n, -3.5));
}
BENCHMARK(BM_LaguerreRecurrence)->RangeMultiplier(10)->Range(10, 10000);

}  // namespace
