#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normform/quadfield.hpp"

namespace normform {

// Sieve of P_n = {p prime : p = u^2 + n v^2, u v in Z} up to `limit`.
// Members are strictly increasing; weight_prefix[i] is the compensated sum
// of log p over members[0..i]. Immutable after build.
struct PnSieve {
    i64 n = 0;
    u64 limit = 0;
    std::vector<u64> members;
    std::vector<double> weight_prefix;

    std::size_t count_up_to(u64 x) const; // |P_n intersect [x]|
};

struct SieveConfig {
    std::string cache_dir = "./cache"; // empty disables caching
    u64 max_limit = 100'000'000;
};

struct Witness {
    i64 u = 0;
    i64 v = 0;
};

// Membership by bounded search over v <= sqrt(p/n) with a perfect-square
// test on p - n v^2. Unconditionally correct.
std::optional<Witness> is_member(i64 n, u64 p);

// Principal-form representation p = u^2 + n v^2 via Cornacchia's algorithm.
// Fast path for odd p with p not dividing n; agrees with is_member there.
std::optional<Witness> cornacchia(i64 n, u64 p);

PnSieve build_sieve(i64 n, u64 x, const SieveConfig& cfg = {});

// Sum of log p over members <= x, compensated.
double weighted_count(const PnSieve& sieve, u64 x);

struct DensityReport {
    double unweighted_density = 0; // |P_n cap [x]| log x / x
    double weighted_density = 0;   // weighted_count(x) / x
    double chebotarev_reference = 0; // 1 / (2 h)
};

DensityReport density_report(const PnSieve& sieve, const QuadField& field, u64 x);

// |{x, y in [p] : x^2 + n y^2 = b (mod p)}| for odd p with (-n|p) = +1 and
// gcd(b, p) = 1; exact enumeration below the cutoff, the two-linear-forms
// count above it. Always p - 1.
u64 residue_form_count(i64 n, i64 p, i64 b, i64 enumeration_cutoff = 500);

// Fraction of members <= x lying in the class b mod Q. Every prime factor
// of Q must be odd, coprime to n, with (-n|p) = +1; b coprime to Q.
double pn_residue_density(const PnSieve& sieve, i64 Q, i64 b, u64 x);

// Cache file IO ("PNSV1" format). read throws cache_integrity_error on any
// malformed content; write goes through a temp file plus atomic rename.
void write_sieve_cache(const PnSieve& sieve, const std::string& path);
PnSieve read_sieve_cache(const std::string& path);
std::string sieve_cache_path(const std::string& dir, i64 n, u64 limit);

} // namespace normform
