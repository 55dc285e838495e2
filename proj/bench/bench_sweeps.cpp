// Serial reference vs OpenMP path for the bound sweeps.
#include <benchmark/benchmark.h>

#include "fqs/presets.hpp"
#include "fqs/sweeps.hpp"

using namespace fqs;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_Truncation(benchmark::State& state) {
    const auto m = driven_qubit();
    std::vector<int> lms;
    for (int l = 3; l <= 12; ++l) lms.push_back(l);
    for (auto _ : state) benchmark::DoNotOptimize(truncation_sweep(m.H, lms, {0.5, 1.0, 2.0}, 1e-10, exec_of(state)));
}

void BM_LiebRobinson(benchmark::State& state) {
    const auto m = driven_qubit();
    for (auto _ : state)
        benchmark::DoNotOptimize(lieb_robinson_sweep(m.H, 16, {0.25, 0.5, 1.0, 1.5, 2.0}, exec_of(state)));
}

void BM_Symmetry(benchmark::State& state) {
    const auto m = driven_qubit();
    for (auto _ : state) benchmark::DoNotOptimize(symmetry_sweep(m.H, 8, 1.0, 1, exec_of(state)));
}

void BM_Deviation(benchmark::State& state) {
    const auto m = driven_qubit();
    const auto pc = adiabatic_columns(m.H, 1.0, 1e-3);
    const auto states = random_states(2, 20, 1);
    for (auto _ : state) benchmark::DoNotOptimize(deviation_sweep(m.H, pc, 1.0, states, 1e-10, exec_of(state)));
}

}  // namespace

// Arg 0 = serial, 1 = parallel
BENCHMARK(BM_Truncation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LiebRobinson)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Symmetry)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Deviation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
