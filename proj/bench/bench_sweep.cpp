// Serial reference sweep vs the OpenMP row-parallel sweep on figure grids.

#include <benchmark/benchmark.h>

#include "wva/figures.hpp"

namespace {

wva::SweepSpec spec_for(int which) {
    switch (which) {
        case 0: return wva::figure_sweeps(wva::FigureId::Fig1d).front();
        case 1: return wva::figure_sweeps(wva::FigureId::Fig2).front();
        default: return wva::figure_sweeps(wva::FigureId::Fig4).front();
    }
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = spec_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(wva::run_sweep_serial(spec));
    state.SetItemsProcessed(state.iterations() * spec.points);
}

void BM_SweepParallel(benchmark::State& state) {
    const auto spec = spec_for(static_cast<int>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(wva::run_sweep(spec, threads));
    state.SetItemsProcessed(state.iterations() * spec.points);
}

}  // namespace

// arg 0: fig1d, fig2, fig4
BENCHMARK(BM_SweepSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)
    ->ArgsProduct({{0, 1, 2}, {2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
