#include <benchmark/benchmark.h>

#include "pqg/energy.hpp"
#include "pqg/random_fields.hpp"

using namespace pqg;

namespace {
InversionData bench_data(int n) {
    GridSpec g = GridSpec::cubic(n);
    return InversionData(band_limited_noise(g, 3, 11), band_limited_noise(g, 3, 12));
}
} // namespace

static void BM_GradEnergy(benchmark::State& state) {
    InversionData data = bench_data(static_cast<int>(state.range(0)));
    ScalarField p = band_limited_noise(data.grid(), 3, 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad_energy(p, data));
    }
}
BENCHMARK(BM_GradEnergy)->Arg(32)->Arg(64);

static void BM_GradEnergyEps(benchmark::State& state) {
    InversionData data = bench_data(static_cast<int>(state.range(0)));
    ScalarField p = band_limited_noise(data.grid(), 3, 13);
    MollifierSpec m = MollifierSpec::bump(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad_energy_eps(p, data, m));
    }
}
BENCHMARK(BM_GradEnergyEps)->Arg(32)->Arg(64);

static void BM_MinEps(benchmark::State& state) {
    MollifierSpec m = MollifierSpec::bump(0.1);
    double x = -0.2;
    for (auto _ : state) {
        x = -x;
        benchmark::DoNotOptimize(m.min_eps(0.05 * x));
    }
}
BENCHMARK(BM_MinEps);
