#include <benchmark/benchmark.h>

#include "pqg/exact1d.hpp"
#include "pqg/solver.hpp"

using namespace pqg;

static void BM_SolveBaseballCap(benchmark::State& state) {
    GridSpec g(4, 4, static_cast<int>(state.range(0)));
    auto [data, p_exact] = baseball_cap(g);
    SolveConfig cfg;
    cfg.tol_gap = 1e-8;
    for (auto _ : state) {
        auto [p, rep] = solve(ScalarField(g, 0.0), data, cfg);
        benchmark::DoNotOptimize(rep.final_gap_bound);
    }
}
BENCHMARK(BM_SolveBaseballCap)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_SolveBB(benchmark::State& state) {
    GridSpec g(4, 4, static_cast<int>(state.range(0)));
    auto [data, p_exact] = baseball_cap(g);
    SolveConfig cfg;
    cfg.tol_gap = 1e-8;
    cfg.method = SolveMethod::PreconditionedGradientBB;
    for (auto _ : state) {
        auto [p, rep] = solve(ScalarField(g, 0.0), data, cfg);
        benchmark::DoNotOptimize(rep.final_gap_bound);
    }
}
BENCHMARK(BM_SolveBB)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
