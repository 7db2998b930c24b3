#include <benchmark/benchmark.h>

#include "condphoton/oracle.hpp"

using namespace condphoton;

namespace {

void BM_OracleSubtract(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto rho = coherent_density_matrix(1.0, dim);
  const auto bs = BeamSplitterParams::from_reflectivity(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_subtract(rho, bs, DetectorModel::resolving(1)));
}
BENCHMARK(BM_OracleSubtract)->Arg(15)->Arg(20)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_OracleAdd(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto rho = coherent_density_matrix(1.0, dim);
  const auto pdc = PdcParams::from_lambda(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_add(rho, pdc, DetectorModel::resolving(1)));
}
BENCHMARK(BM_OracleAdd)->Arg(15)->Arg(20)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_BeamSplitterUnitary(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bs_unitary(0.3, dim, dim));
}
BENCHMARK(BM_BeamSplitterUnitary)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace
