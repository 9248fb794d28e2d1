#include "normform/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace normform {

ReducedFraction make_fraction(i64 a, i64 q) {
    if (q <= 0) throw invalid_input_error("make_fraction: q must be positive");
    i64 canon = ((a % q) + q) % q;
    if (q == 1) canon = 0;
    if (q != 1 && std::gcd(canon, q) != 1)
        throw invalid_input_error("make_fraction: a and q must be coprime");
    return ReducedFraction{canon, q};
}

IntPolynomial::IntPolynomial(std::vector<i64> c) : coeffs(std::move(c)) {
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.size() < 2 || coeffs.back() == 0)
        throw invalid_input_error("IntPolynomial: degree must be at least 1");
}

u64 IntPolynomial::eval_mod(u64 x, u64 m) const {
    if (m == 0) throw invalid_input_error("eval_mod: zero modulus");
    u64 xm = x % m;
    u64 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = mulmod(acc, xm, m);
        i64 c = *it % i64(m);
        acc = (acc + u64(c < 0 ? c + i64(m) : c)) % m;
    }
    return acc;
}

u128 IntPolynomial::eval_wrap128(u128 x) const {
    u128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + u128(i128(*it)); // sign-extended wraparound
    }
    return acc;
}

double IntPolynomial::eval_double(double x) const {
    double acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + double(*it);
    return acc;
}

double IntPolynomial::derivative_bound(double x) const {
    double bound = 0;
    double pw = 1;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        bound += double(i) * std::abs(double(coeffs[i])) * pw;
        pw *= std::max(1.0, std::abs(x));
    }
    return bound;
}

u64 phi2_raw_bruteforce(const QuadField& field, u64 q) {
    if (q == 0) throw invalid_input_error("phi2_raw: q must be positive");
    if (q == 1) return 1;
    std::vector<char> coprime(q);
    for (u64 m = 0; m < q; ++m) coprime[m] = gcd_u64(m, q) == 1;
    u64 t = u64(field.omega_trace);
    u64 mu = u64(((field.omega_norm % i64(q)) + i64(q)) % i64(q));
    u64 count = 0;
    for (u64 v = 0; v < q; ++v) {
        // N(u, v) mod q stepped incrementally: N(u+1,v) - N(u,v) = 2u+1+tv.
        u64 value = mulmod(mulmod(mu, v, q), v, q);
        u64 step = (t * v + 1) % q;
        for (u64 u = 0; u < q; ++u) {
            count += u64(coprime[value]);
            value += step;
            if (value >= q) value -= q;
            step += 2;
            if (step >= q) step -= q;
        }
    }
    return count;
}

u64 phi2_raw_prime(const QuadField& field, u64 p) {
    if (p == 2) return phi2_raw_bruteforce(field, 2);
    // Complete the square: N(u,v) = (u + tv/2)^2 - (disc/4) v^2 mod p, and
    // u' = u + tv/2 ranges over all residues as u does. Count the zeros of
    // u'^2 = (disc/4) v^2 with a table of square multiplicities.
    std::vector<u64> square_count(p, 0);
    for (u64 w = 0; w < p; ++w) square_count[mulmod(w, w, p)]++;
    u64 inv4 = u64(mod_inverse(4, i64(p)));
    u64 dmod = u64(((field.disc % i64(p)) + i64(p)) % i64(p));
    u64 dq = mulmod(dmod, inv4, p);
    u64 zeros = 0;
    for (u64 v = 0; v < p; ++v) zeros += square_count[mulmod(dq, mulmod(v, v, p), p)];
    return p * p - zeros;
}

u64 phi2_raw(const QuadField& field, u64 q) {
    if (q == 0) throw invalid_input_error("phi2_raw: q must be positive");
    if (q <= 1000) return phi2_raw_bruteforce(field, q);
    u128 result = 1;
    for (auto [p, e] : factorize(q)) {
        u64 local = p <= 1000 ? phi2_raw_bruteforce(field, p) : phi2_raw_prime(field, p);
        result *= local;
        for (int i = 0; i < 2 * (e - 1); ++i) result *= p;
        if (result > u128(std::numeric_limits<u64>::max()))
            throw overflow_error("phi2_raw: value exceeds 64-bit range");
    }
    return static_cast<u64>(result);
}

double phi2(const QuadField& field, u64 q) {
    u64 raw = phi2_raw(field, q);
    if (q <= 2) return double(raw);
    return double(raw) / 2.0;
}

namespace {

std::vector<cplx> roots_of_unity(u64 q) {
    std::vector<cplx> roots(q);
    for (u64 k = 0; k < q; ++k) roots[k] = unit_phase(double(k) / double(q));
    return roots;
}

double w_factor(u64 q0) { return q0 > 2 ? 0.5 : 1.0; }

// Histogram of P(N(u, v)) mod q_phase over u, v in [0, modulus) with v a
// multiple of v_step and N(u + v omega) coprime to `coprime_to`.
std::vector<u64> phase_bins(const QuadField& field, const IntPolynomial& poly, u64 q_phase,
                            u64 modulus, u64 coprime_to, u64 v_step) {
    std::vector<char> coprime(coprime_to);
    for (u64 m = 0; m < coprime_to; ++m) coprime[m] = gcd_u64(m, coprime_to) == 1;
    std::vector<u64> bins(q_phase, 0);
    for (u64 v = 0; v < modulus; v += v_step) {
        for (u64 u = 0; u < modulus; ++u) {
            u64 norm = norm_form(field, i64(u), i64(v));
            if (!coprime[norm % coprime_to]) continue;
            bins[poly.eval_mod(norm, q_phase)]++;
        }
    }
    return bins;
}

cplx apply_phase(const std::vector<u64>& bins, i64 a, u64 q_phase,
                 const std::vector<cplx>& roots) {
    u64 am = u64(((a % i64(q_phase)) + i64(q_phase)) % i64(q_phase));
    KahanSumComplex sum;
    for (u64 r = 0; r < q_phase; ++r) {
        if (bins[r] == 0) continue;
        sum.add(double(bins[r]) * roots[mulmod(am, r, q_phase)]);
    }
    return sum.value();
}

// Sum over u, v in [0, modulus) with v a multiple of v_step and
// N(u + v omega) coprime to `coprime_to`, of e(a P(N) / q_phase).
cplx restricted_phase_sum(const QuadField& field, const IntPolynomial& poly, i64 a, u64 q_phase,
                          u64 modulus, u64 coprime_to, u64 v_step) {
    auto bins = phase_bins(field, poly, q_phase, modulus, coprime_to, v_step);
    return apply_phase(bins, a, q_phase, roots_of_unity(q_phase));
}

// Count of (u, v) in [0, modulus)^2 with v_step | v and N coprime to p.
u64 restricted_pair_count(const QuadField& field, u64 modulus, u64 p, u64 v_step) {
    u64 count = 0;
    for (u64 v = 0; v < modulus; v += v_step) {
        for (u64 u = 0; u < modulus; ++u) {
            if (norm_form(field, i64(u), i64(v)) % p != 0) ++count;
        }
    }
    return count;
}

u64 prime_power_part(u64 value, u64 p) {
    u64 part = 1;
    while (value % p == 0) {
        part *= p;
        value /= p;
    }
    return part;
}

} // namespace

cplx weyl_sum_bruteforce(const QuadField& field, const IntPolynomial& poly,
                         const ReducedFraction& frac) {
    u64 q = u64(frac.q);
    u64 q0 = q * u64(field.n0);
    i64 a = frac.a == 0 ? 1 : frac.a; // 0/1 is the integer frequency 1/1
    return w_factor(q0) *
           restricted_phase_sum(field, poly, a, q, q0, q0, u64(field.n0));
}

namespace {

cplx weyl_sum_crt(const QuadField& field, const IntPolynomial& poly, const ReducedFraction& frac) {
    u64 q = u64(frac.q);
    u64 n0 = u64(field.n0);
    u64 q0 = q * n0;
    i64 a = frac.a == 0 ? 1 : frac.a;

    // The (u, v) grid mod q0, the coprimality of N, the condition n0 | v and
    // the phase all factor across the prime powers of q0.
    cplx product = 1.0;
    for (auto [p, e] : factorize(q0)) {
        (void)e;
        u64 pi = prime_power_part(q0, p);
        u64 qi = prime_power_part(q, p);
        u64 n0i = prime_power_part(n0, p);
        if (qi == 1) {
            product *= double(restricted_pair_count(field, pi, p, n0i));
        } else {
            u64 cof = q / qi; // coprime to qi
            u64 am = u64(((a % i64(qi)) + i64(qi)) % i64(qi));
            i64 ai = i64(mulmod(am, u64(mod_inverse(i64(cof % qi), i64(qi))), qi));
            product *= restricted_phase_sum(field, poly, ai, qi, pi, p, n0i);
        }
    }
    return w_factor(q0) * product;
}

} // namespace

cplx weyl_sum(const QuadField& field, const IntPolynomial& poly, const ReducedFraction& frac) {
    u64 q0 = u64(frac.q) * u64(field.n0);
    if (q0 <= 32) return weyl_sum_bruteforce(field, poly, frac);
    return weyl_sum_crt(field, poly, frac);
}

cplx coefficient(const QuadField& field, const IntPolynomial& poly, const ReducedFraction& frac) {
    u64 q0 = u64(frac.q) * u64(field.n0);
    return weyl_sum(field, poly, frac) / (double(field.rn) * phi2(field, q0));
}

double invariance_check(const QuadField& field, const IntPolynomial& poly,
                        const ReducedFraction& frac, int k) {
    if (k < 1 || k > 8) throw invalid_input_error("invariance_check: k must be in [1, 8]");
    u64 q = u64(frac.q);
    u64 n0 = u64(field.n0);
    u64 q0 = q * n0;
    u64 kq0 = u64(k) * q0;
    i64 a = frac.a == 0 ? 1 : frac.a;
    cplx lhs = restricted_phase_sum(field, poly, a, q, q0, q0, n0) /
               double(phi2_raw_bruteforce(field, q0));
    cplx rhs = restricted_phase_sum(field, poly, a, q, kq0, kq0, n0) /
               double(phi2_raw_bruteforce(field, kq0));
    return std::abs(lhs - rhs);
}

DecayScan decay_scan(const QuadField& field, const IntPolynomial& poly, i64 q_max) {
    if (q_max < 1 || q_max > 500)
        throw invalid_input_error("decay_scan: q_max must be in [1, 500]");
    DecayScan scan;
    u64 n0 = u64(field.n0);
    for (i64 q = 1; q <= q_max; ++q) {
        u64 q0 = u64(q) * n0;
        auto bins = phase_bins(field, poly, u64(q), q0, q0, n0);
        auto roots = roots_of_unity(u64(q));
        double w = w_factor(q0);
        double best = 0;
        if (q == 1) {
            best = w * std::abs(apply_phase(bins, 1, 1, roots));
        } else {
            for (i64 a = 1; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                best = std::max(best, w * std::abs(apply_phase(bins, a, u64(q), roots)));
            }
        }
        scan.rows.push_back({q, best / double(q) / double(q)});
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& row : scan.rows) {
        if (row.max_abs_over_q2 <= 0) continue;
        double lx = std::log(double(row.q));
        double ly = std::log(row.max_abs_over_q2);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m >= 2 && sxx * double(m) - sx * sx > 0)
        scan.fitted_slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
    return scan;
}

} // namespace normform
