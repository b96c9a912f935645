#include <benchmark/benchmark.h>

#include "fflab/analysis.hpp"
#include "fflab/fekete.hpp"
#include "fflab/orthopoly.hpp"

namespace {

void BM_RecurrenceTableHermite(benchmark::State& state) {
  const auto w = fflab::make_weight(fflab::WeightSpec::hermite());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fflab::recurrence_table(w, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_RecurrenceTableHermite)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_RecurrenceTableFreud4(benchmark::State& state) {
  const auto w = fflab::make_weight(fflab::WeightSpec::freud(4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fflab::recurrence_table(w, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_RecurrenceTableFreud4)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SolveFekete(benchmark::State& state) {
  const auto w = fflab::make_weight(fflab::WeightSpec::freud(4));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fflab::solve_fekete(w, n));
}
BENCHMARK(BM_SolveFekete)->Arg(5)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_KernelSweep(benchmark::State& state) {
  const auto w = fflab::make_weight(fflab::WeightSpec::hermite());
  const int n = static_cast<int>(state.range(0));
  const auto nodes = fflab::zeros(fflab::recurrence_table(w, n), n);
  const auto grid = fflab::build_grid({}, w, nodes.nodes, fflab::auto_radius(w, nodes.nodes, 1.5));
  for (auto _ : state) benchmark::DoNotOptimize(fflab::kernel_sup(nodes, w, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_KernelSweep)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
