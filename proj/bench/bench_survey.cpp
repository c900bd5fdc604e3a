// Serial reference vs OpenMP reduction on the same survey workload.

#include <benchmark/benchmark.h>

#include "entangle/experiments.hpp"

using namespace entangle;

namespace {

ExperimentConfig workload(std::uint64_t n, Executor exec) {
  ExperimentConfig c;
  c.ensemble = Ensemble::All;
  c.samples = n;
  c.gates = {Gate::cnot(), Gate::u_theta(0.25 * 3.141592653589793)};
  c.exec = exec;
  return c;
}

void BM_DeltaSerial(benchmark::State& state) {
  const auto cfg = workload(static_cast<std::uint64_t>(state.range(0)), Executor::serial());
  for (auto _ : state) benchmark::DoNotOptimize(delta_e_distribution(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DeltaOpenMP(benchmark::State& state) {
  const auto cfg = workload(static_cast<std::uint64_t>(state.range(0)), Executor::hardware());
  for (auto _ : state) benchmark::DoNotOptimize(delta_e_distribution(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleMixed(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mixed(rng));
  state.SetItemsProcessed(state.iterations());
}

void BM_EntanglementOfFormation(benchmark::State& state) {
  RngStream rng(2, 0);
  const auto rho = sample_mixed(rng);
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_of_formation(rho));
  state.SetItemsProcessed(state.iterations());
}

} // namespace

BENCHMARK(BM_DeltaSerial)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaOpenMP)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMixed);
BENCHMARK(BM_EntanglementOfFormation);

BENCHMARK_MAIN();
