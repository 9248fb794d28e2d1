#include "normform/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normform {

namespace {

u64 checked_norm_product(const std::vector<std::pair<PrimeIdealTag, int>>& factors) {
    u128 norm = 1;
    for (const auto& [tag, exp] : factors) {
        for (int i = 0; i < exp; ++i) {
            norm *= tag.norm();
            if (norm > u128(1) << 63) throw overflow_error("ideal norm exceeds 64-bit range");
        }
    }
    return static_cast<u64>(norm);
}

} // namespace

IdealFactorization make_ideal(std::vector<std::pair<PrimeIdealTag, int>> factors) {
    std::erase_if(factors, [](const auto& f) { return f.second == 0; });
    for (const auto& [tag, exp] : factors) {
        if (exp < 0) throw invalid_input_error("make_ideal: exponents must be positive");
        (void)tag;
    }
    std::sort(factors.begin(), factors.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < factors.size(); ++i) {
        if (factors[i - 1].first == factors[i].first)
            throw invalid_input_error("make_ideal: duplicate prime ideal factor");
    }
    IdealFactorization ideal;
    ideal.norm = checked_norm_product(factors);
    ideal.factors = std::move(factors);
    return ideal;
}

IdealFactorization ideal_mul(const IdealFactorization& x, const IdealFactorization& y) {
    auto factors = x.factors;
    for (const auto& [tag, exp] : y.factors) {
        auto it = std::find_if(factors.begin(), factors.end(),
                               [&](const auto& f) { return f.first == tag; });
        if (it == factors.end())
            factors.emplace_back(tag, exp);
        else
            it->second += exp;
    }
    return make_ideal(std::move(factors));
}

IdealFactorization ideal_div(const IdealFactorization& n, const IdealFactorization& d) {
    auto factors = n.factors;
    for (const auto& [tag, exp] : d.factors) {
        auto it = std::find_if(factors.begin(), factors.end(),
                               [&](const auto& f) { return f.first == tag; });
        if (it == factors.end() || it->second < exp)
            throw invalid_input_error("ideal_div: divisor does not divide");
        it->second -= exp;
    }
    return make_ideal(std::move(factors));
}

bool ideal_coprime(const IdealFactorization& x, const IdealFactorization& y) {
    for (const auto& [tag, exp] : x.factors) {
        (void)exp;
        for (const auto& [tag2, exp2] : y.factors) {
            (void)exp2;
            if (tag == tag2) return false;
        }
    }
    return true;
}

bool ideal_divides(const IdealFactorization& d, const IdealFactorization& n) {
    for (const auto& [tag, exp] : d.factors) {
        auto it = std::find_if(n.factors.begin(), n.factors.end(),
                               [&](const auto& f) { return f.first == tag; });
        if (it == n.factors.end() || it->second < exp) return false;
    }
    return true;
}

std::vector<IdealFactorization> ideal_divisors(const IdealFactorization& ideal) {
    std::vector<IdealFactorization> out;
    out.push_back(make_ideal({}));
    for (const auto& [tag, exp] : ideal.factors) {
        std::size_t base = out.size();
        for (int e = 1; e <= exp; ++e) {
            for (std::size_t i = 0; i < base; ++i) {
                auto factors = out[i].factors;
                factors.emplace_back(tag, e);
                out.push_back(make_ideal(std::move(factors)));
            }
        }
    }
    return out;
}

std::vector<PrimeIdealTag> splitting_type(const QuadField& field, i64 p) {
    if (p < 2 || !is_prime(u64(p))) throw invalid_input_error("splitting_type: p must be prime");
    int symbol = kronecker(field.disc, p);
    if (symbol == -1) return {PrimeIdealTag{p, PrimeKind::inert, -1}};

    i64 t = field.omega_trace;
    i64 mu = field.omega_norm;
    std::vector<i64> roots;
    if (p == 2) {
        for (i64 r = 0; r < 2; ++r) {
            if (((r * r - t * r + mu) % 2 + 2) % 2 == 0) roots.push_back(r);
        }
    } else if (symbol == 0) {
        // Double root of r^2 - t r + mu (mod p): r = t/2.
        roots.push_back(i64(mulmod(u64(((t % p) + p) % p), u64(mod_inverse(2, p)), u64(p))));
    } else {
        u64 d = u64(((field.disc % p) + p) % p);
        auto sq = sqrt_mod(d, u64(p));
        if (!sq) throw numeric_error("splitting_type: missing square root for split prime");
        u64 inv2 = u64(mod_inverse(2, p));
        u64 tp = u64(((t % p) + p) % p);
        i64 r1 = i64(mulmod((tp + *sq) % u64(p), inv2, u64(p)));
        i64 r2 = i64(mulmod((tp + u64(p) - *sq) % u64(p), inv2, u64(p)));
        roots = {std::min(r1, r2), std::max(r1, r2)};
    }

    std::vector<PrimeIdealTag> tags;
    if (symbol == 0) {
        if (roots.empty()) throw numeric_error("splitting_type: no root for ramified prime");
        tags.push_back(PrimeIdealTag{p, PrimeKind::ramified, roots.front()});
    } else {
        if (roots.size() != 2 || roots[0] == roots[1])
            throw numeric_error("splitting_type: expected two distinct split roots");
        tags.push_back(PrimeIdealTag{p, PrimeKind::split_plus, roots[0]});
        tags.push_back(PrimeIdealTag{p, PrimeKind::split_minus, roots[1]});
    }
    return tags;
}

namespace {

// All prime ideal tags with norm <= x, sorted by the tag order.
std::vector<PrimeIdealTag> prime_tags_up_to(const QuadField& field, u64 x) {
    std::vector<PrimeIdealTag> tags;
    if (x < 2) return tags;
    std::vector<bool> composite(x + 1, false);
    for (u64 p = 2; p <= x; ++p) {
        if (composite[p]) continue;
        for (u64 m = p * p; m <= x; m += p) composite[m] = true;
        auto split = splitting_type(field, i64(p));
        for (const auto& tag : split) {
            if (tag.norm() <= x) tags.push_back(tag);
        }
    }
    std::sort(tags.begin(), tags.end());
    return tags;
}

void enumerate_rec(const std::vector<PrimeIdealTag>& tags, std::size_t idx, u64 budget,
                   std::vector<std::pair<PrimeIdealTag, int>>& current,
                   std::vector<IdealFactorization>& out) {
    out.push_back(make_ideal(current));
    for (std::size_t i = idx; i < tags.size(); ++i) {
        u64 norm = tags[i].norm();
        if (norm > budget) break; // tags sorted by norm
        u64 rem = budget / norm;
        int exp = 0;
        while (true) {
            ++exp;
            current.emplace_back(tags[i], exp);
            enumerate_rec(tags, i + 1, rem, current, out);
            current.pop_back();
            if (rem < norm) break;
            rem /= norm;
        }
    }
}

} // namespace

std::vector<IdealFactorization> enumerate_ideals(const QuadField& field, u64 x,
                                                 const IdealEnumerationConfig& cfg) {
    if (x < 1) throw invalid_input_error("enumerate_ideals: x must be >= 1");
    if (x > cfg.max_norm_cap)
        throw resource_limit_error("enumerate_ideals: x exceeds the enumeration cap");
    auto tags = prime_tags_up_to(field, x);
    std::vector<IdealFactorization> out;
    std::vector<std::pair<PrimeIdealTag, int>> current;
    enumerate_rec(tags, 0, x, current, out);
    std::sort(out.begin(), out.end(), [](const IdealFactorization& a, const IdealFactorization& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.factors < b.factors;
    });
    return out;
}

u64 tau(const IdealFactorization& ideal) {
    u64 result = 1;
    for (const auto& [tag, exp] : ideal.factors) {
        (void)tag;
        result *= u64(exp) + 1;
    }
    return result;
}

int mobius(const IdealFactorization& ideal) {
    int sign = 1;
    for (const auto& [tag, exp] : ideal.factors) {
        (void)tag;
        if (exp >= 2) return 0;
        sign = -sign;
    }
    return sign;
}

double von_mangoldt(const IdealFactorization& ideal) {
    if (ideal.factors.size() != 1) return 0.0;
    return std::log(double(ideal.factors.front().first.norm()));
}

namespace {

struct SumAccumulator {
    u128 count = 0;
    u128 tau_sum = 0;
};

u64 int_pow(u64 base, int exp) {
    u64 r = 1;
    while (exp--) r *= base;
    return r;
}

void ideal_sums_rec(const std::vector<PrimeIdealTag>& tags, std::size_t idx, u64 budget,
                    u64 tau_so_far, int k, SumAccumulator& acc) {
    acc.count += 1;
    acc.tau_sum += tau_so_far;
    for (std::size_t i = idx; i < tags.size(); ++i) {
        u64 norm = tags[i].norm();
        if (norm > budget) break;
        u64 rem = budget / norm;
        int exp = 0;
        while (true) {
            ++exp;
            ideal_sums_rec(tags, i + 1, rem, tau_so_far * int_pow(u64(exp) + 1, k), k, acc);
            if (rem < norm) break;
            rem /= norm;
        }
    }
}

} // namespace

IdealSums ideal_sums(const QuadField& field, u64 x, int k, const IdealEnumerationConfig& cfg) {
    if (x < 1) throw invalid_input_error("ideal_sums: x must be >= 1");
    if (k < 0 || k > 4) throw invalid_input_error("ideal_sums: k must be in [0, 4]");
    if (x > cfg.max_norm_cap)
        throw resource_limit_error("ideal_sums: x exceeds the enumeration cap");
    auto tags = prime_tags_up_to(field, x);
    SumAccumulator acc;
    ideal_sums_rec(tags, 0, x, 1, k, acc);
    if (acc.count > u128(std::numeric_limits<u64>::max()) ||
        acc.tau_sum > u128(std::numeric_limits<u64>::max()))
        throw overflow_error("ideal_sums: sum exceeds 64-bit range");
    return {static_cast<u64>(acc.count), static_cast<u64>(acc.tau_sum)};
}

VaughanCheck vaughan_check(const QuadField& field, const IdealFactorization& ideal, u64 U, u64 V) {
    (void)field;
    if (ideal.norm <= U)
        throw precondition_error("vaughan_check: identity requires norm > U");
    VaughanCheck out;
    out.lambda = von_mangoldt(ideal);

    auto divisors = ideal_divisors(ideal);
    KahanSum s1, s2, s3;
    for (const auto& d : divisors) {
        // S1: d*a = n with Nd <= V.
        if (d.norm <= V) {
            auto cof = ideal_div(ideal, d);
            if (cof.norm > 1) s1.add(mobius(d) * std::log(double(cof.norm)));
        }
    }
    for (const auto& m : divisors) {
        double lm = von_mangoldt(m);
        if (lm == 0.0) continue;
        auto rest = ideal_div(ideal, m); // d*a ranges over divisors of rest
        for (const auto& d : ideal_divisors(rest)) {
            if (m.norm <= U && d.norm <= V) s2.add(lm * mobius(d));
            if (m.norm > U && d.norm > V) s3.add(lm * mobius(d));
        }
    }
    out.s1 = s1.value();
    out.s2 = s2.value();
    out.s3 = s3.value();
    out.residual = out.s1 - out.s2 + out.s3 - out.lambda;
    return out;
}

Type2Coefficients type2_coefficients(const QuadField& field, VaughanSum which,
                                     const IdealFactorization& ideal_a,
                                     const IdealFactorization& ideal_b, u64 U, u64 V) {
    (void)field;
    Type2Coefficients out;
    double log_nb = ideal_b.norm > 1 ? std::log(double(ideal_b.norm)) : 0.0;
    switch (which) {
    case VaughanSum::S1:
        out.x_a = mobius(ideal_a);
        out.y_b = log_nb;
        break;
    case VaughanSum::S2: {
        out.x_a = ideal_a.norm < V ? mobius(ideal_a) : 0.0;
        KahanSum y;
        for (const auto& m : ideal_divisors(ideal_b)) {
            if (m.norm <= U) y.add(von_mangoldt(m));
        }
        out.y_b = y.value();
        break;
    }
    case VaughanSum::S3: {
        double x = 0;
        for (const auto& d : ideal_divisors(ideal_a)) {
            if (d.norm > V) x += mobius(d);
        }
        out.x_a = x;
        out.y_b = ideal_b.norm > U ? von_mangoldt(ideal_b) : 0.0;
        break;
    }
    }
    return out;
}

} // namespace normform
