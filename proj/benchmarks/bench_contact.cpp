#include "wiggly/contact.hpp"

#include <benchmark/benchmark.h>

using namespace wiggly;

static void BM_MLagrange(benchmark::State& state) {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m_lagrange(pot, prof, 1.0, 0.5).M);
    }
}
BENCHMARK(BM_MLagrange);

static void BM_MLagrange_TwoValued(benchmark::State& state) {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::two_valued(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m_lagrange(pot, prof, 1.0, 0.5).M);
    }
}
BENCHMARK(BM_MLagrange_TwoValued);

static void BM_MDensity(benchmark::State& state) {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            m_density(pot, prof, 1.0, 0.5, state.range(0)).M);
    }
}
BENCHMARK(BM_MDensity)->Arg(128)->Arg(512);

static void BM_MCell(benchmark::State& state) {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            m_cell_direct(pot, prof, 1.0, 0.5, state.range(0)).M);
    }
}
BENCHMARK(BM_MCell)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
