#pragma once

#include <vector>

#include "normform/quadfield.hpp"

namespace normform {

// A rational a/q in lowest terms, canonicalized to a in [0, q) with a = 0
// only at q = 1. Phases are invariant mod q, so the canonical form is
// value-neutral.
struct ReducedFraction {
    i64 a = 0;
    i64 q = 1;

    double value() const { return double(a) / double(q); }
    friend auto operator<=>(const ReducedFraction&, const ReducedFraction&) = default;
};

ReducedFraction make_fraction(i64 a, i64 q);

// P(x) = c0 + c1 x + ... + cd x^d with integer coefficients, cd != 0, d >= 1.
struct IntPolynomial {
    std::vector<i64> coeffs;

    explicit IntPolynomial(std::vector<i64> c);
    int degree() const { return int(coeffs.size()) - 1; }

    // P(x) mod m in exact integer arithmetic, result in [0, m).
    u64 eval_mod(u64 x, u64 m) const;
    // P(x) mod 2^128 (two's-complement wraparound), for fixed-point phases.
    u128 eval_wrap128(u128 x) const;
    double eval_double(double x) const;
    // Sign-aware magnitude bound sup_{0<=y<=x} |P'(y)|-style crude bound
    // used to size quadrature panels.
    double derivative_bound(double x) const;
};

// phi2'(q) = |{(u,v) in [q]^2 : N(u + v omega) coprime to q}|. Exact count
// by q^2 enumeration for q <= 1000; multiplicativity
// phi2'(p^a) = phi2'(p) p^(2a-2) plus CRT above.
u64 phi2_raw(const QuadField& field, u64 q);

// The same count by direct enumeration at any q (O(q^2); test oracle and
// small-q production path).
u64 phi2_raw_bruteforce(const QuadField& field, u64 q);

// phi2'(p) for a single prime in O(p) via a square table.
u64 phi2_raw_prime(const QuadField& field, u64 p);

// phi2(q): phi2'(q)/2 for q > 2, phi2'(q) for q in {1, 2}. Exactly
// representable in double at all reachable sizes.
double phi2(const QuadField& field, u64 q);

// Complete exponential sum S(a, q) = w(q0) * sum over u, v in [q0] with
// N(u+v omega) coprime to q0 and n0 | v of e(a P(N(u+v omega)) / q), with
// q0 = q n0 and w(q0) = 1/2 for q0 > 2, else 1. Phases are formed from
// P(N) reduced mod q in exact integers.
cplx weyl_sum(const QuadField& field, const IntPolynomial& poly, const ReducedFraction& frac);

// Brute-force double loop over [q0]^2 (reference path).
cplx weyl_sum_bruteforce(const QuadField& field, const IntPolynomial& poly,
                         const ReducedFraction& frac);

// S(a,q) / (R_n phi2(q0)); modulus is at most 1.
cplx coefficient(const QuadField& field, const IntPolynomial& poly, const ReducedFraction& frac);

// |(1/phi2'(q0)) sum over [q0] - (1/phi2'(k q0)) sum over [k q0]|, both
// sums with the same phase denominator q and the n0 | v constraint.
double invariance_check(const QuadField& field, const IntPolynomial& poly,
                        const ReducedFraction& frac, int k);

struct DecayRow {
    i64 q = 0;
    double max_abs_over_q2 = 0; // max over coprime a of |S(a,q)| / q^2
};

struct DecayScan {
    std::vector<DecayRow> rows;
    double fitted_slope = 0; // least-squares slope of log(value) vs log(q)
};

DecayScan decay_scan(const QuadField& field, const IntPolynomial& poly, i64 q_max);

} // namespace normform
