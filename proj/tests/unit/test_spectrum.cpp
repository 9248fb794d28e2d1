#include "doctest.h"
#include "normform/spectrum.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace normform;

namespace {
SieveConfig no_cache() {
    SieveConfig cfg;
    cfg.cache_dir.clear();
    return cfg;
}
} // namespace

TEST_CASE("mollifier sandwich, evenness and window scaling") {
    for (int i = 0; i <= 100000; ++i) {
        double beta = -1.0 + 2.0 * double(i) / 100000.0;
        double value = mollifier(beta);
        double lower = std::abs(beta) <= 0.25 ? 1.0 : 0.0;
        double upper = std::abs(beta) < 0.5 ? 1.0 : 0.0;
        REQUIRE(value >= lower);
        REQUIRE(value <= upper);
        REQUIRE(value == mollifier(-beta));
    }
    CHECK(mollifier_scaled(6, 0.0) == 1.0);
    CHECK(mollifier_scaled(6, std::ldexp(1.0, -8)) == 1.0); // 2^6 * 2^-8 = 1/4
    CHECK(mollifier_scaled(6, std::ldexp(1.0, -7)) == 0.0); // 2^6 * 2^-7 = 1/2
}

TEST_CASE("oscillatory integral against the closed form for linear phases") {
    IntPolynomial linear({0, 1});
    CHECK(oscillatory_integral(linear, 1000.0, 0.0) == cplx(1.0));
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        double m = 100.0 + double(rng() % 1000000);
        double alpha = std::ldexp(1.0 + double(rng() % 1000), -30);
        cplx got = oscillatory_integral(linear, m, alpha);
        cplx closed = (unit_phase(alpha * m) - 1.0) / (cplx(0.0, 1.0) * two_pi * alpha * m);
        CHECK(std::abs(got - closed) < 1e-9);
        CHECK(std::abs(got) <= 1.0 + 1e-9);
    }
    IntPolynomial cubic({1, 2, 0, 1});
    CHECK(std::abs(oscillatory_integral(cubic, 317.0, 1e-6)) <= 1.0 + 1e-9);
    // Phase variation beyond the accuracy budget is a typed failure, not a
    // silently wrong value.
    CHECK_THROWS_AS(oscillatory_integral(cubic, 100000.0, 0.25), numeric_error);
}

TEST_CASE("nearest fraction search") {
    auto nf = nearest_fraction(0.5 + 1e-9, 3);
    CHECK(nf.frac == make_fraction(1, 2));
    CHECK(nf.distance == doctest::Approx(1e-9).epsilon(1e-3));

    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    auto ng = nearest_fraction(golden, 200);
    CHECK(ng.frac == make_fraction(89, 144));

    auto exact = nearest_fraction(3.0 / 7.0, 50);
    CHECK(exact.frac == make_fraction(3, 7));
    CHECK(exact.distance < 1e-12);

    auto wrap = nearest_fraction(1.0 - 1e-6, 10);
    CHECK(wrap.frac == make_fraction(0, 1));
    CHECK(wrap.distance == doctest::Approx(1e-6).epsilon(1e-6));

    // Uniform random cross-check against direct search over all fractions.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        double alpha = double(rng() % 1000003) / 1000003.0;
        i64 bound = 1 + i64(rng() % 40);
        auto fast = nearest_fraction(alpha, bound);
        double best = 2.0;
        for (i64 q = 1; q <= bound; ++q) {
            for (i64 a = 0; a <= q; ++a) {
                double d = std::abs(alpha - double(a) / double(q));
                best = std::min(best, d);
            }
        }
        CHECK(fast.distance == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("arc classification") {
    IntPolynomial linear({0, 1});
    ArcSpec arcs{1000000, 2.0, 1};
    auto major = arcs.classify(1.0 / 3.0 + arcs.radius() / 2);
    REQUIRE(major.has_value());
    CHECK(*major == make_fraction(1, 3));
    // Far from all low fractions at this radius scale.
    double alpha = 1.0 / 3.0 + 50 * arcs.radius();
    auto check = arcs.classify(alpha);
    if (check) CHECK(std::abs(alpha - check->value()) <= arcs.radius());
}

TEST_CASE("kernel transform basics") {
    auto sieve = build_sieve(1, 200000, no_cache());
    IntPolynomial linear({0, 1});
    auto at_zero = kernel_transform(sieve, linear, 100000, 0.0);
    CHECK(at_zero.real() == doctest::Approx(weighted_count(sieve, 100000) / 1e5).epsilon(1e-12));
    CHECK(at_zero.imag() == 0.0);

    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        double alpha = double(rng() % 1000) / 1001.0;
        auto plus = kernel_transform(sieve, linear, 100000, alpha);
        auto minus = kernel_transform(sieve, linear, 100000, -alpha);
        CHECK(std::abs(plus - std::conj(minus)) < 1e-12);
        CHECK(std::abs(plus) <= at_zero.real() + 1e-12);
    }
    CHECK_THROWS_AS(kernel_transform(sieve, linear, 300000, 0.5), out_of_range_error);
}

TEST_CASE("grid kernel path equals the direct path") {
    auto sieve = build_sieve(1, 20000, no_cache());
    IntPolynomial quad({1, 1, 2});
    auto grid_vals = kernel_transform_grid(sieve, quad, 20000, 256);
    for (u64 j = 0; j < 256; j += 17) {
        auto direct = kernel_transform(sieve, quad, 20000, double(j) / 256.0);
        CHECK(std::abs(grid_vals[j] - direct) < 1e-9);
    }
}

TEST_CASE("approximant transform at and away from fractions") {
    auto f1 = build_field(1);
    IntPolynomial linear({0, 1});
    CoefficientCache cache(f1, linear);
    u64 m = u64(1) << 20;

    // Exactly at 1/2 with a tiny offset: the q=2 term dominates.
    cplx near_half = approximant_transform(cache, m, 2.0, 0.5 + 1e-9);
    CHECK(std::abs(near_half - cplx(-0.5, 0.0)) < 0.01);

    cplx at_half = approximant_transform(cache, m, 2.0, 0.5);
    CHECK(at_half.real() == doctest::Approx(-0.5).epsilon(1e-9));

    // The golden ratio stays outside every mollifier window.
    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(std::abs(approximant_transform(cache, m, 2.0, golden)) == 0.0);

    // Block regrouping: full transform equals the sum of its blocks.
    std::mt19937_64 rng(47);
    double bound = std::pow(std::log(double(m)), 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        double alpha = double(rng() % 999983) / 999983.0;
        cplx total = approximant_transform(cache, m, 2.0, alpha);
        cplx rebuilt = 0;
        for (int s = 1; std::ldexp(1.0, s) <= bound; ++s)
            rebuilt += approximant_block(cache, m, s, alpha);
        CHECK(std::abs(total - rebuilt) <= 1e-12);
    }
    CHECK_THROWS_AS(approximant_transform(cache, 8, 2.0, 0.1), invalid_input_error);
}

TEST_CASE("wide approximant uses the larger block range") {
    auto f1 = build_field(1);
    IntPolynomial linear({0, 1});
    CoefficientCache cache(f1, linear);
    u64 m = u64(1) << 16;
    // Blocks up to sqrt(m)/16 = 16, i.e. s <= 4; B = 2 gives (log m)^2 = 123
    // so s <= 6. At a q = 31 fraction only the wide variant can see block 5.
    double alpha = 1.0 / 31.0;
    cplx wide = approximant_transform_wide(cache, m, alpha);
    (void)wide;
    // Consistency: wide equals the block sum over its own range.
    cplx rebuilt = 0;
    for (int s = 1; std::ldexp(1.0, s) <= std::sqrt(double(m)) / 16.0; ++s)
        rebuilt += approximant_block(cache, m, s, alpha);
    CHECK(std::abs(wide - rebuilt) <= 1e-12);
}

TEST_CASE("major arc residual at the zero frequency reduces to the density") {
    auto f1 = build_field(1);
    auto sieve = build_sieve(1, 100000, no_cache());
    IntPolynomial linear({0, 1});
    auto res = major_arc_residual(sieve, f1, linear, 100000, make_fraction(0, 1), 0.0, 2.0);
    CHECK(res.lhs.real() == doctest::Approx(weighted_count(sieve, 100000)).epsilon(1e-12));
    CHECK(res.main.real() == doctest::Approx(0.5 * 100000).epsilon(1e-12));
    CHECK(res.residual_over_x < 0.05);

    CHECK_THROWS_AS(
        major_arc_residual(sieve, f1, linear, 100000, make_fraction(1, 2), 0.3, 2.0),
        precondition_error);
}

TEST_CASE("minor arc scan flags and bounds") {
    auto sieve = build_sieve(1, 100000, no_cache());
    IntPolynomial linear({0, 1});
    auto rows = minor_arc_scan(sieve, linear, {1.0 / 3.0}, {100000}, 2.0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].major);
    CHECK(rows[0].major_center == make_fraction(1, 3));

    // Triangle bound: value <= prime-power weighted mass / x.
    double mass = 0;
    for (u64 p : sieve.members) {
        if (p > 100000) break;
        for (u64 pk = p; pk <= 100000; pk *= p) {
            mass += std::log(double(p));
            if (pk > 100000 / p) break;
        }
    }
    CHECK(rows[0].value <= mass / 100000 + 1e-12);
}

TEST_CASE("sup error scan validates the grid precondition") {
    auto sieve = build_sieve(1, 20000, no_cache());
    auto f1 = build_field(1);
    IntPolynomial linear({0, 1});
    CHECK_THROWS_AS(sup_error_scan(sieve, f1, linear, 20000, 2.0, 128), invalid_input_error);
    auto scan = sup_error_scan(sieve, f1, linear, 16384, 2.0, 256);
    CHECK(scan.sup_err >= 0.0);
    CHECK(scan.errors.size() == 256);
}

TEST_CASE("Ionescu-Wainger base set and membership") {
    IWConfig cfg;
    cfg.rho = 0.5;
    cfg.N = 32;
    cfg.q_cap = 64;
    auto base = iw_base_set(cfg);
    CHECK(base == std::vector<u64>{7, 11, 13, 17, 19, 23, 25, 27, 29, 31, 32});

    // 1/1 always belongs; every denominator <= N is admissible.
    CHECK(iw_denominator_member(cfg, 1));
    for (u64 q = 1; q <= 32; ++q) {
        CAPTURE(q);
        CHECK(iw_denominator_member(cfg, q));
    }
    // 2^6 needs N = 64; 37 exceeds N.
    CHECK_FALSE(iw_denominator_member(cfg, 64));
    CHECK_FALSE(iw_denominator_member(cfg, 37));

    IWConfig bad;
    bad.rho = 0.5;
    bad.N = 16; // 2^R = 32 > N
    CHECK_THROWS_AS(iw_base_set(bad), invalid_input_error);

    IWConfig nocap;
    nocap.rho = 0.5;
    nocap.N = 32;
    CHECK_THROWS_AS(iw_frequencies(nocap), invalid_input_error);
}

TEST_CASE("IW heights are the first dyadic admission level") {
    double rho = 0.5;
    IWConfig cfg;
    cfg.rho = rho;
    cfg.q_cap = 10000;
    for (u64 q = 1; q <= 10000; q += (q < 64 ? 1 : 97)) {
        ReducedFraction frac = q == 1 ? make_fraction(0, 1) : make_fraction(1, i64(q));
        u64 h = iw_height(rho, frac);
        cfg.N = h;
        CHECK(iw_denominator_member(cfg, q));
        cfg.N = h * 2;
        CHECK(iw_denominator_member(cfg, q)); // monotone in N
        cfg.N = h * 4;
        CHECK(iw_denominator_member(cfg, q));
        if (h > 32) {
            cfg.N = h / 2;
            CHECK_FALSE(iw_denominator_member(cfg, q));
        }
    }
    // Every fraction with denominator <= N lies in the N-th set.
    cfg.N = 128;
    for (u64 q = 1; q <= 128; ++q) CHECK(iw_denominator_member(cfg, q));
}

TEST_CASE("IW frequency enumeration honors the cap") {
    IWConfig cfg;
    cfg.rho = 0.5;
    cfg.N = 32;
    cfg.q_cap = 40;
    auto fracs = iw_frequencies(cfg);
    CHECK(fracs.front() == make_fraction(0, 1));
    for (const auto& f : fracs) {
        CHECK(f.q <= 40);
        CHECK(iw_denominator_member(cfg, u64(f.q)));
    }
    // Denominators 33..40 that factor inside the base set appear, e.g. 36.
    bool has36 = false;
    for (const auto& f : fracs) has36 |= f.q == 36;
    CHECK(has36);
}
