#include <benchmark/benchmark.h>

#include "zetaforge/aperynum.hpp"
#include "zetaforge/exact.hpp"
#include "zetaforge/padic.hpp"
#include "zetaforge/resum.hpp"
#include "zetaforge/spectra.hpp"
#include "zetaforge/specval.hpp"

using namespace zetaforge;

// B_k are cached process-wide; after the first iteration this is a copy.
static void BM_BernoulliTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact::bernoulli_numbers(state.range(0)));
}
BENCHMARK(BM_BernoulliTable)->Arg(200);

static void BM_BernoulliPoly(benchmark::State& state) {
    auto x = exact::make_rat(3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(exact::bernoulli_poly(state.range(0), x));
}
BENCHMARK(BM_BernoulliPoly)->Arg(20)->Arg(100);

// The recurrence tables are memoized, so this times the closed-form sum.
static void BM_Apery3Closed(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(aperynum::apery3_closed(state.range(0)));
}
BENCHMARK(BM_Apery3Closed)->Arg(60)->Arg(400);

static void BM_NchoSpectrum(benchmark::State& state) {
    spectra::set_cache_enabled(false);
    specval::NchoParams params(2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(spectra::ncho_eigs(params, state.range(0), 0));
}
BENCHMARK(BM_NchoSpectrum)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_RkjMonteCarlo(benchmark::State& state) {
    specval::Budget budget{static_cast<std::uint64_t>(state.range(0)), 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(specval::r_kj_quadrature(2, 1, 0.5, specval::Method::MONTE_CARLO, budget));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RkjMonteCarlo)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_BorelSum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(resum::borel_sum_hurwitz(2, 0.5));
}
BENCHMARK(BM_BorelSum);

static void BM_PadicHurwitz(benchmark::State& state) {
    padic::PadicContext ctx(5, 30);
    auto tau = exact::make_rat(1, 5);
    for (auto _ : state) benchmark::DoNotOptimize(padic::padic_hurwitz_zeta(3, tau, state.range(0), ctx));
}
BENCHMARK(BM_PadicHurwitz)->Arg(20)->Arg(60);
BENCHMARK_MAIN();
