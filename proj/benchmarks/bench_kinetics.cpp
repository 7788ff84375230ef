#include "wiggly/kinetics.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace wiggly;

static void BM_HarmonicMeanK(benchmark::State& state) {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    double gap = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(harmonic_mean_K(pot, prof, 1.0 + gap));
    }
}
BENCHMARK(BM_HarmonicMeanK)->DenseRange(1, 6);

static void BM_HarmonicMeanK_TwoValued(benchmark::State& state) {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::two_valued(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(harmonic_mean_K(pot, prof, 2.0));
    }
}
BENCHMARK(BM_HarmonicMeanK_TwoValued);

static void BM_REffStar(benchmark::State& state) {
    auto rel = KineticRelation(DissipationPotential::quadratic(1.0),
                               WigglyProfile::sinusoidal(1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rel.R_eff_star(2.0));
    }
}
BENCHMARK(BM_REffStar);

static void BM_REff(benchmark::State& state) {
    auto rel = KineticRelation(DissipationPotential::quadratic(1.0),
                               WigglyProfile::sinusoidal(1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rel.R_eff(1.0));
    }
}
BENCHMARK(BM_REff);
