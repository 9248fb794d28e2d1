#include <benchmark/benchmark.h>

#include <random>

#include "normform/averages.hpp"
#include "normform/ideals.hpp"
#include "normform/spectrum.hpp"
#include "normform/varops.hpp"

using namespace normform;

namespace {

SieveConfig no_cache() {
    SieveConfig cfg;
    cfg.cache_dir.clear();
    return cfg;
}

void BM_sieve_build(benchmark::State& state) {
    u64 limit = u64(state.range(0));
    for (auto _ : state) {
        auto sieve = build_sieve(1, limit, no_cache());
        benchmark::DoNotOptimize(sieve.members.data());
    }
    state.SetItemsProcessed(i64(state.iterations()) * i64(limit));
}
BENCHMARK(BM_sieve_build)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_kernel_grid(benchmark::State& state) {
    static auto sieve = build_sieve(1, 1 << 20, no_cache());
    IntPolynomial linear({0, 1});
    for (auto _ : state) {
        auto values = kernel_transform_grid(sieve, linear, 1 << 20, u64(state.range(0)));
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(BM_kernel_grid)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_weyl_sum(benchmark::State& state) {
    auto field = build_field(3);
    IntPolynomial quad({0, 0, 1});
    i64 q = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weyl_sum(field, quad, make_fraction(1, q)));
    }
}
BENCHMARK(BM_weyl_sum)->Arg(97)->Arg(360)->Arg(1009);

void BM_ideal_sums(benchmark::State& state) {
    auto field = build_field(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ideal_sums(field, u64(state.range(0)), 2));
    }
}
BENCHMARK(BM_ideal_sums)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_variation_dp(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    FiniteSeq seq(std::size_t(state.range(0)));
    for (auto& z : seq) z = cplx(gauss(rng), gauss(rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(v_variation(seq, 3.0));
    }
}
BENCHMARK(BM_variation_dp)->Arg(128)->Arg(512)->Arg(2048);

void BM_oscillatory_integral(benchmark::State& state) {
    IntPolynomial linear({0, 1});
    double beta = std::ldexp(1.0, -int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oscillatory_integral(linear, double(1 << 20), beta));
    }
}
BENCHMARK(BM_oscillatory_integral)->Arg(7)->Arg(13)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
