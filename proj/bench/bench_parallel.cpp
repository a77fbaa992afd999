// Parallel kernels against their serial references. Run with OMP_NUM_THREADS set to
// compare scaling; both variants produce identical results by construction.

#include <benchmark/benchmark.h>

#include "resonance/oracle.hpp"
#include "resonance/sweep.hpp"

namespace {

using namespace resonance;

RunSpec fig3_perp() { return figure_preset("fig3").front(); }

void BM_SweepParallel(benchmark::State& state) {
    const RunSpec spec = fig3_perp();
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

void BM_SweepSerial(benchmark::State& state) {
    const RunSpec spec = fig3_perp();
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
}

const ValidatedConfig& oracle_config() {
    static const ValidatedConfig cfg = validate({Orientation::Perpendicular, 0.5, 0.3, 1.2, 4.0});
    return cfg;
}

void BM_BruteForceParallel(benchmark::State& state) {
    oracle::BruteForceOptions opts;
    opts.chunk = 4096;
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::brute_force_sum(KernelKind::Cosine, oracle_config(), state.range(0), opts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BruteForceSerial(benchmark::State& state) {
    oracle::BruteForceOptions opts;
    opts.chunk = 4096;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            oracle::brute_force_sum_serial(KernelKind::Cosine, oracle_config(), state.range(0), opts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
