#include <benchmark/benchmark.h>

#include "pqg/norms.hpp"
#include "pqg/operators.hpp"
#include "pqg/random_fields.hpp"

using namespace pqg;

static void BM_DiffFD(benchmark::State& state) {
    GridSpec g = GridSpec::cubic(static_cast<int>(state.range(0)));
    ScalarField f = band_limited_noise(g, 4, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(diff(f, 3, DiffMode::FD));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_DiffFD)->Arg(32)->Arg(64);

static void BM_DiffSpectral(benchmark::State& state) {
    GridSpec g = GridSpec::cubic(static_cast<int>(state.range(0)));
    ScalarField f = band_limited_noise(g, 4, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(diff(f, 3, DiffMode::Spectral));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_DiffSpectral)->Arg(32)->Arg(64);

static void BM_InverseLaplacian(benchmark::State& state) {
    GridSpec g = GridSpec::cubic(static_cast<int>(state.range(0)));
    ScalarField f = band_limited_noise(g, 4, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inverse_laplacian(f));
    }
}
BENCHMARK(BM_InverseLaplacian)->Arg(32)->Arg(64);

static void BM_NormHneg1(benchmark::State& state) {
    GridSpec g = GridSpec::cubic(static_cast<int>(state.range(0)));
    ScalarField f = band_limited_noise(g, 4, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm_Hneg1(f));
    }
}
BENCHMARK(BM_NormHneg1)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
