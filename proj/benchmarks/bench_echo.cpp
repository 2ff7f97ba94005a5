#include "aafermi/backflow.hpp"
#include "aafermi/dephasing.hpp"

#include <benchmark/benchmark.h>

using namespace aafermi;

namespace {

LatticeConfig config(int length) {
  LatticeConfig c;
  c.length = length;
  c.potential_strength = 2.5;
  c.impurity_coupling = 0.01;
  return c;
}

void BM_Diagonalize(benchmark::State& state) {
  const auto h = build_hamiltonian(config(static_cast<int>(state.range(0))), ImpurityMode::with_impurity);
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h));
}
BENCHMARK(BM_Diagonalize)->Arg(233)->Arg(377)->Arg(987)->Unit(benchmark::kMillisecond);

void BM_EchoProblem(benchmark::State& state) {
  const auto c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EchoProblem::charge_density_wave(c));
}
BENCHMARK(BM_EchoProblem)->Arg(233)->Arg(987)->Unit(benchmark::kMillisecond);

void BM_Overlap(benchmark::State& state) {
  const auto p = EchoProblem::charge_density_wave(config(static_cast<int>(state.range(0))));
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.propagator.overlap(t));
    t += 0.37;
  }
}
BENCHMARK(BM_Overlap)->Arg(89)->Arg(233)->Arg(377)->Arg(987)->Unit(benchmark::kMicrosecond);

void BM_SeriesAndReport(benchmark::State& state) {
  const auto c = config(233);
  const TimeGrid grid(default_t_max(c), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(backflow_report(decoherence_series(c, grid)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SeriesAndReport)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
