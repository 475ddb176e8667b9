#include <benchmark/benchmark.h>

#include <thetaglue/bivar.hpp>
#include <thetaglue/lattices.hpp>
#include <thetaglue/modforms.hpp>

using namespace thetaglue;

namespace {

LatticeSpec make_spec(Family family, std::vector<long> m, int epsilon = 0) {
    LatticeSpec spec;
    spec.family = family;
    spec.m = std::move(m);
    spec.epsilon = epsilon;
    return spec;
}

void BM_series_mul(benchmark::State& state) {
    const QExp trunc = q_int(state.range(0));
    const QSeries t3 = theta_series(ThetaKind::Theta3, trunc);
    const QSeries t4 = theta_series(ThetaKind::Theta4, trunc);
    for (auto _ : state) benchmark::DoNotOptimize(mul(t3, t4));
}
BENCHMARK(BM_series_mul)->Arg(32)->Arg(128)->Arg(512);

void BM_theta_pow(benchmark::State& state) {
    const QSeries t3 = theta_series(ThetaKind::Theta3, q_int(32));
    for (auto _ : state) benchmark::DoNotOptimize(pow(t3, state.range(0)));
}
BENCHMARK(BM_theta_pow)->Arg(8)->Arg(48)->Arg(240);

void BM_cache_build(benchmark::State& state) {
    for (auto _ : state) {
        ModformCache cache(q_int(state.range(0)));
        benchmark::DoNotOptimize(cache.e4());
    }
}
BENCHMARK(BM_cache_build)->Arg(32)->Arg(128);

void BM_h_closed_series(benchmark::State& state) {
    ModformCache cache(q_int(32));
    for (auto _ : state) benchmark::DoNotOptimize(cache.h_closed(state.range(0)));
}
BENCHMARK(BM_h_closed_series)->Arg(10)->Arg(30);

void BM_h_poly(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(h_poly(state.range(0)));
}
BENCHMARK(BM_h_poly)->Arg(10)->Arg(30);

void BM_theta_by_cosets_d8cubed(benchmark::State& state) {
    const LatticeSpec spec = make_spec(Family::Odd8m, {1, 1, 1});
    for (auto _ : state) {
        ModformCache cache(q_int(state.range(0)));
        benchmark::DoNotOptimize(theta_by_cosets(spec, cache));
    }
}
BENCHMARK(BM_theta_by_cosets_d8cubed)->Arg(32);

void BM_theta_by_theorem_d8cubed(benchmark::State& state) {
    const LatticeSpec spec = make_spec(Family::Odd8m, {1, 1, 1});
    for (auto _ : state) {
        ModformCache cache(q_int(state.range(0)));
        benchmark::DoNotOptimize(theta_by_theorem(spec, cache));
    }
}
BENCHMARK(BM_theta_by_theorem_d8cubed)->Arg(32);

void BM_theta_by_enumeration_d12d12(benchmark::State& state) {
    const LatticeSpec spec = make_spec(Family::Even8m4, {1, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(theta_by_enumeration(spec, q_int(state.range(0))));
}
BENCHMARK(BM_theta_by_enumeration_d12d12)->Arg(4)->Arg(6);

void BM_unimodular_check_rank24(benchmark::State& state) {
    const LatticeSpec spec = make_spec(Family::Even8m4, {1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(check_even_unimodular(spec));
}
BENCHMARK(BM_unimodular_check_rank24);

}  // namespace

BENCHMARK_MAIN();
