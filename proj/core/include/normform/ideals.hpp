#pragma once

#include <compare>
#include <vector>

#include "normform/quadfield.hpp"

namespace normform {

enum class PrimeKind : int { split_plus = 0, split_minus = 1, ramified = 2, inert = 3 };

// A prime ideal of O_{Q(sqrt(-n))} above the rational prime p. For split
// and ramified primes the ideal is (p, omega - root); inert primes are (p)
// and carry no root.
struct PrimeIdealTag {
    i64 p = 0;
    PrimeKind kind = PrimeKind::inert;
    i64 root = -1;

    u64 norm() const { return kind == PrimeKind::inert ? u64(p) * u64(p) : u64(p); }

    friend auto operator<=>(const PrimeIdealTag& x, const PrimeIdealTag& y) {
        // Fixed total order: (norm, p, kind rank, root).
        if (auto c = x.norm() <=> y.norm(); c != 0) return c;
        if (auto c = x.p <=> y.p; c != 0) return c;
        if (auto c = static_cast<int>(x.kind) <=> static_cast<int>(y.kind); c != 0) return c;
        return x.root <=> y.root;
    }
    friend bool operator==(const PrimeIdealTag&, const PrimeIdealTag&) = default;
};

// An integral ideal in factored form. Factors are kept sorted by the tag
// order; the empty list is the unit ideal. The cached norm always matches
// the product of tag norms.
struct IdealFactorization {
    std::vector<std::pair<PrimeIdealTag, int>> factors;
    u64 norm = 1;

    bool is_unit() const { return factors.empty(); }
    friend bool operator==(const IdealFactorization&, const IdealFactorization&) = default;
};

IdealFactorization make_ideal(std::vector<std::pair<PrimeIdealTag, int>> factors);

IdealFactorization ideal_mul(const IdealFactorization& x, const IdealFactorization& y);
// Exact quotient; throws invalid_input_error unless d | n.
IdealFactorization ideal_div(const IdealFactorization& n, const IdealFactorization& d);
bool ideal_coprime(const IdealFactorization& x, const IdealFactorization& y);
bool ideal_divides(const IdealFactorization& d, const IdealFactorization& n);
// All divisors of the ideal, unordered.
std::vector<IdealFactorization> ideal_divisors(const IdealFactorization& ideal);

// Splitting of the rational prime p: two tags (split), one tag (inert or
// ramified). Split roots r and t-r satisfy r^2 - t*r + mu = 0 (mod p).
std::vector<PrimeIdealTag> splitting_type(const QuadField& field, i64 p);

struct IdealEnumerationConfig {
    u64 max_norm_cap = 10'000'000; // resource-limit beyond this
};

// Every integral ideal of norm <= x exactly once, in nondecreasing norm
// order with ties broken by the tag order (deterministic).
std::vector<IdealFactorization> enumerate_ideals(const QuadField& field, u64 x,
                                                 const IdealEnumerationConfig& cfg = {});

u64 tau(const IdealFactorization& ideal);
int mobius(const IdealFactorization& ideal);
double von_mangoldt(const IdealFactorization& ideal);

struct IdealSums {
    u64 count = 0;
    u64 tau_power_sum = 0; // sum of tau^k, exact
};

// count = #{N a <= x}, tau_power_sum = sum of tau(a)^k over the same range.
// Requires k <= 4.
IdealSums ideal_sums(const QuadField& field, u64 x, int k,
                     const IdealEnumerationConfig& cfg = {});

struct VaughanCheck {
    double s1 = 0, s2 = 0, s3 = 0;
    double lambda = 0;
    double residual = 0; // s1 - s2 + s3 - lambda
};

// Three-sum decomposition of von Mangoldt at the ideal, valid when
// norm > U, by exhaustive divisor enumeration.
VaughanCheck vaughan_check(const QuadField& field, const IdealFactorization& ideal, u64 U, u64 V);

enum class VaughanSum { S1, S2, S3 };

struct Type2Coefficients {
    double x_a = 0;
    double y_b = 0;
};

// The bilinear coefficient assignment for the selected sum:
//   S1: x_a = mu(a),                      y_b = log N(b)
//   S2: x_a = mu(a) * [N(a) < V],         y_b = sum_{m|b, Nm <= U} Lambda(m)
//   S3: x_a = sum_{d|a, Nd > V} mu(d),    y_b = Lambda(b) * [N(b) > U]
Type2Coefficients type2_coefficients(const QuadField& field, VaughanSum which,
                                     const IdealFactorization& ideal_a,
                                     const IdealFactorization& ideal_b, u64 U, u64 V);

} // namespace normform
