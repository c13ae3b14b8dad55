#include "gapcorr/asymptotics.hpp"
#include "gapcorr/coupling.hpp"
#include "gapcorr/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace gapcorr;

static void BM_PExactCold(benchmark::State& state) {
    const long x = -state.range(0);
    for (auto _ : state) {
        coupling_cache_clear();
        benchmark::DoNotOptimize(p_exact(x, 3));
    }
}
BENCHMARK(BM_PExactCold)->Arg(16)->Arg(64)->Arg(256);

static void BM_PQuadrature(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(p_quadrature(-7, 4, static_cast<mpfr_prec_t>(state.range(0))));
}
BENCHMARK(BM_PQuadrature)->Arg(128)->Arg(256);

static void BM_DetHP(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    HPMatrix m(n, n, HPReal(256));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = p_eval(-static_cast<long>(i) - 1, static_cast<long>(j), 256);
    for (auto _ : state) benchmark::DoNotOptimize(det_hp(m, 256));
}
BENCHMARK(BM_DetHP)->Arg(8)->Arg(16)->Arg(32);

static void BM_Correlation(benchmark::State& state) {
    const long R = state.range(0);
    MultiholeConfig cfg{{Multihole{Orientation::right, 1, {0}, 0, 0}, Multihole{Orientation::left, 1, {0}, R, 0}}, 0};
    for (auto _ : state) benchmark::DoNotOptimize(correlation(cfg, 256));
}
BENCHMARK(BM_Correlation)->Arg(16)->Arg(64);

static void BM_DominantDeterminant(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const LimitConfig lc = sample_limit_config(rng);
    for (auto _ : state) benchmark::DoNotOptimize(det_exact(dominant_matrix_exact(lc)));
}
BENCHMARK(BM_DominantDeterminant);

static void BM_Kasteleyn(benchmark::State& state) {
    const TorusGraph g{state.range(0)};
    HolePunch h{{{Orientation::right, 0, 0}, {Orientation::left, 1, 0}}};
    for (auto _ : state) benchmark::DoNotOptimize(count_matchings_kasteleyn(g, h));
}
BENCHMARK(BM_Kasteleyn)->Arg(8)->Arg(16)->Arg(24)->Arg(32);

BENCHMARK_MAIN();
