#include "doctest.h"
#include "normform/averages.hpp"
#include "normform/spectrum.hpp"

#include <cmath>
#include <random>

using namespace normform;

namespace {
SieveConfig no_cache() {
    SieveConfig cfg;
    cfg.cache_dir.clear();
    return cfg;
}

Signal random_signal(std::mt19937_64& rng, int span = 40) {
    std::map<i64, cplx> atoms;
    std::normal_distribution<double> gauss(0.0, 1.0);
    int count = 3 + int(rng() % 12);
    for (int i = 0; i < count; ++i)
        atoms[i64(rng() % (2 * span)) - span] = cplx(gauss(rng), gauss(rng));
    return Signal(std::move(atoms));
}
} // namespace

TEST_CASE("kernel atoms and total mass") {
    auto sieve = build_sieve(1, 64, no_cache());
    IntPolynomial linear({0, 1});
    auto k = kernel(sieve, linear, 20);
    REQUIRE(k.support_size() == 4);
    for (u64 p : {2ull, 5ull, 13ull, 17ull})
        CHECK(k.at(i64(p)).real() == doctest::Approx(std::log(double(p)) / 20.0));
    CHECK(k.mass() == doctest::Approx(weighted_count(sieve, 20) / 20.0).epsilon(1e-13));
    CHECK(kernel(sieve, linear, 1).empty());
}

TEST_CASE("kernel transform equals the signal transform of the kernel") {
    auto sieve = build_sieve(1, 5000, no_cache());
    IntPolynomial quad({1, 0, 1});
    auto k = kernel(sieve, quad, 5000);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 8; ++trial) {
        double alpha = double(rng() % 100000) / 100001.0;
        KahanSumComplex acc;
        for (const auto& [x, v] : k.atoms()) acc.add(v * unit_phase(alpha * double(x)));
        auto direct = kernel_transform(sieve, quad, 5000, alpha);
        CHECK(std::abs(acc.value() - direct) < 1e-9);
    }
}

TEST_CASE("ergodic averages on the cyclic system") {
    auto sieve = build_sieve(1, 64, no_cache());
    IntPolynomial linear({0, 1});
    auto sys = ToySystem::cyclic(8, 1);
    auto indicator = [](i64 x) { return x == 0 ? cplx(1.0) : cplx(0.0); };

    CHECK(ergodic_avg(sieve, linear, 20, sys, indicator, 5, Weighting::unweighted).real() ==
          doctest::Approx(0.5));
    CHECK(ergodic_avg(sieve, linear, 20, sys, indicator, 3, Weighting::unweighted).real() ==
          doctest::Approx(0.0));

    auto constant = [](i64) { return cplx(0.25, -1.0); };
    auto avg = ergodic_avg(sieve, linear, 20, sys, constant, 2, Weighting::unweighted);
    CHECK(avg.real() == doctest::Approx(0.25));
    CHECK(avg.imag() == doctest::Approx(-1.0));

    CHECK_THROWS_AS(ergodic_avg(sieve, linear, 1, sys, indicator, 0, Weighting::unweighted),
                    empty_average_error);
    CHECK(ergodic_avg(sieve, linear, 1, sys, indicator, 0, Weighting::log_weighted) == cplx(0.0));
}

TEST_CASE("averages are linear and positive") {
    auto sieve = build_sieve(2, 200, no_cache());
    IntPolynomial linear({0, 1});
    auto sys = ToySystem::cyclic(16, 3);
    std::mt19937_64 rng(59);
    std::vector<double> f(16), g(16);
    for (auto& v : f) v = double(rng() % 100) / 10.0;
    for (auto& v : g) v = double(rng() % 100) / 10.0 - 5.0;
    auto fp = [&](i64 x) { return cplx(f[std::size_t(x)]); };
    auto gp = [&](i64 x) { return cplx(g[std::size_t(x)]); };
    auto fg = [&](i64 x) { return cplx(f[std::size_t(x)] + 2.0 * g[std::size_t(x)]); };
    for (i64 x0 = 0; x0 < 16; ++x0) {
        auto a = ergodic_avg(sieve, linear, 150, sys, fp, x0, Weighting::log_weighted);
        auto b = ergodic_avg(sieve, linear, 150, sys, gp, x0, Weighting::log_weighted);
        auto c = ergodic_avg(sieve, linear, 150, sys, fg, x0, Weighting::log_weighted);
        CHECK(std::abs(c - (a + 2.0 * b)) < 1e-12);
        CHECK(a.real() >= 0.0); // f >= 0
    }
}

TEST_CASE("cyclic invariance under composition with T") {
    auto sieve = build_sieve(1, 200, no_cache());
    IntPolynomial linear({0, 1});
    auto sys = ToySystem::cyclic(12, 5);
    std::mt19937_64 rng(61);
    std::vector<cplx> f(12);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& v : f) v = cplx(gauss(rng), gauss(rng));
    auto fp = [&](i64 x) { return f[std::size_t(x)]; };
    auto f_of_T = [&](i64 x) { return f[std::size_t(sys.apply(x, 1))]; };
    for (i64 x0 = 0; x0 < 12; ++x0) {
        auto lhs = ergodic_avg(sieve, linear, 150, sys, f_of_T, x0, Weighting::unweighted);
        auto rhs = ergodic_avg(sieve, linear, 150, sys, fp, sys.apply(x0, 1), Weighting::unweighted);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("avg_sequence exposes both normalizations") {
    auto sieve = build_sieve(1, 64, no_cache());
    IntPolynomial linear({0, 1});
    auto sys = ToySystem::cyclic(8, 1);
    auto indicator = [](i64 x) { return x == 0 ? cplx(1.0) : cplx(0.0); };
    auto seq = avg_sequence(sieve, linear, sys, indicator, 5, {8, 20});
    REQUIRE(seq.unweighted.size() == 2);
    CHECK(seq.unweighted[0].real() == doctest::Approx(0.5)); // members {2,5}: 5-2=3, 5-5=0
    CHECK(seq.unweighted[1].real() == doctest::Approx(0.5));
    CHECK(seq.weighted[1].real() ==
          doctest::Approx((std::log(5.0) + std::log(13.0)) / 20.0).epsilon(1e-12));

    auto constant = [](i64) { return cplx(3.0); };
    auto cs = avg_sequence(sieve, linear, sys, constant, 1, {4, 8, 16, 32});
    for (auto v : cs.unweighted) CHECK(v.real() == doctest::Approx(3.0));

    CHECK_THROWS_AS(avg_sequence(sieve, linear, sys, indicator, 0, {8, 8}), invalid_input_error);
}

TEST_CASE("weighted shift averages transfer to kernel correlation") {
    auto sieve = build_sieve(1, 300, no_cache());
    IntPolynomial linear({0, 1});
    auto sys = ToySystem::shift();
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_signal(rng, 300);
        auto fp = [&](i64 x) { return f.at(x); };
        auto corr = kernel_correlate(kernel(sieve, linear, 256), reflect(f));
        for (i64 x : {-7, 0, 3, 40}) {
            auto direct = ergodic_avg(sieve, linear, 256, sys, fp, x, Weighting::log_weighted);
            CHECK(std::abs(direct - corr.at(-x)) < 1e-12);
        }
    }
}

TEST_CASE("maximal function pointwise facts") {
    auto sieve = build_sieve(1, 64, no_cache());
    IntPolynomial linear({0, 1});
    Signal delta0(std::map<i64, cplx>{{0, 1.0}});

    auto sup = maximal_fn(sieve, linear, delta0, 64);
    for (u64 p : {2ull, 5ull, 13ull, 17ull}) {
        u64 m = 1;
        while (m < p) m <<= 1; // first dyadic scale containing p
        CHECK(sup.at(-i64(p)).real() >= std::log(double(p)) / double(m) - 1e-12);
    }

    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_signal(rng);
        std::map<i64, cplx> mag;
        for (const auto& [x, v] : f.atoms()) mag[x] = std::abs(v);
        Signal fabs(std::move(mag));
        auto top = kernel_correlate(kernel(sieve, linear, 64), fabs);
        auto supf = maximal_fn(sieve, linear, fabs, 64);
        for (const auto& [x, v] : top.atoms())
            CHECK(supf.at(x).real() >= 0.5 * std::abs(v) - 1e-12);
        // l-infinity bound by the largest kernel mass.
        double max_mass = 0;
        for (u64 m = 1; m <= 64; m <<= 1) max_mass = std::max(max_mass, kernel(sieve, linear, m).mass());
        double f_inf = 0;
        for (const auto& [x, v] : fabs.atoms()) f_inf = std::max(f_inf, std::abs(v));
        for (const auto& [x, v] : supf.atoms()) CHECK(std::abs(v) <= f_inf * max_mass + 1e-12);
    }
}

TEST_CASE("convolution work beyond both budgets is a resource error") {
    auto sieve = build_sieve(1, 64, no_cache());
    IntPolynomial linear({0, 1});
    Signal sparse(std::map<i64, cplx>{{0, 1.0}, {i64(1) << 40, 1.0}});
    MaximalConfig cfg;
    cfg.direct_limit = 0; // force FFT, whose padded length then overflows
    CHECK_THROWS_AS(maximal_fn(sieve, linear, sparse, 64, cfg), resource_limit_error);
}

TEST_CASE("direct and FFT correlation paths agree") {
    auto sieve = build_sieve(1, 2048, no_cache());
    IntPolynomial linear({0, 1});
    std::mt19937_64 rng(73);
    auto f = random_signal(rng, 500);
    MaximalConfig direct_cfg;
    MaximalConfig fft_cfg;
    fft_cfg.direct_limit = 0; // force the FFT path
    auto a = maximal_fn(sieve, linear, f, 2048, direct_cfg);
    auto b = maximal_fn(sieve, linear, f, 2048, fft_cfg);
    for (const auto& [x, v] : a.atoms()) CHECK(std::abs(v - b.at(x)) < 1e-9);
    for (const auto& [x, v] : b.atoms()) CHECK(std::abs(v - a.at(x)) < 1e-9);
}
