// Serial reference against the OpenMP region and sweep kernels.

#include <benchmark/benchmark.h>

#include "cpf/figures.hpp"
#include "cpf/scan.hpp"

namespace {

cpf::RegionSpec region_spec(std::size_t n) {
  // m = 3 goes through the reduced three-mode path, the costly one
  return cpf::figure8_spec(n);
}

void BM_RegionSerial(benchmark::State& state) {
  const auto spec = region_spec(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cpf::region_scan_serial(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.x.size() * spec.y.size()));
}

void BM_RegionParallel(benchmark::State& state) {
  const auto spec = region_spec(static_cast<std::size_t>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(cpf::region_scan(spec, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.x.size() * spec.y.size()));
}

cpf::SweepSpec mixed_sweep() {
  cpf::SweepSpec spec;
  spec.base.m = 2;
  spec.base.eta_b = 0.55;
  spec.base.n_s = 50.0;
  spec.variable = cpf::SweepVariable::EtaT;
  spec.grid = cpf::linspace(0.0, 1.0, 201);
  spec.protocols = {cpf::SweepProtocol::Classical, cpf::SweepProtocol::IdlerFree, cpf::SweepProtocol::Mixed};
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = mixed_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(cpf::sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = mixed_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(cpf::sweep(spec, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_RegionSerial)->Arg(41)->Arg(101)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RegionParallel)
    ->ArgsProduct({{41, 101}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
