#include "normform/normprimes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>

namespace normform {

namespace {

bool perfect_square(u64 x, u64& root) {
    u64 r = static_cast<u64>(std::sqrt(double(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    root = r;
    return r * r == x;
}

// Bit array of primes <= x (index = value).
std::vector<bool> prime_table(u64 x) {
    std::vector<bool> is_p(x + 1, true);
    is_p[0] = false;
    if (x >= 1) is_p[1] = false;
    for (u64 p = 2; p * p <= x; ++p) {
        if (!is_p[p]) continue;
        for (u64 m = p * p; m <= x; m += p) is_p[m] = false;
    }
    return is_p;
}

} // namespace

std::size_t PnSieve::count_up_to(u64 x) const {
    if (x > limit) throw out_of_range_error("PnSieve: query beyond sieve limit");
    return std::upper_bound(members.begin(), members.end(), x) - members.begin();
}

std::optional<Witness> is_member(i64 n, u64 p) {
    if (n <= 0) throw invalid_input_error("is_member: n must be positive");
    for (u64 v = 0; u64(n) * v * v <= p; ++v) {
        u64 rest = p - u64(n) * v * v;
        u64 u;
        if (perfect_square(rest, u)) return Witness{i64(u), i64(v)};
    }
    return std::nullopt;
}

std::optional<Witness> cornacchia(i64 n, u64 p) {
    if (n <= 0) throw invalid_input_error("cornacchia: n must be positive");
    if (p == 2 || p % 2 == 0 || u64(n) % p == 0)
        throw not_applicable_error("cornacchia: requires odd p not dividing n");
    u64 nm = u64(n) % p;
    auto r = sqrt_mod(p - nm, p); // sqrt of -n mod p
    if (!r) return std::nullopt;
    u64 r0 = *r;
    if (r0 < p - r0) r0 = p - r0; // take the root in (p/2, p)
    u64 a = p, b = r0;
    while (b * b > p) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    u64 rest = p - b * b;
    if (rest % u64(n)) return std::nullopt;
    u64 c;
    if (!perfect_square(rest / u64(n), c)) return std::nullopt;
    return Witness{i64(b), i64(c)};
}

namespace {

// Marks every value u^2 + n v^2 <= x within [lo, hi) into `bits`
// (bits[i] corresponds to value lo + i).
void mark_representable_segment(i64 n, u64 x, u64 lo, u64 hi, std::vector<bool>& bits) {
    for (u64 v = 0;; ++v) {
        u64 base = u64(n) * v * v;
        if (base > x || base >= hi) break;
        u64 u_start = 0;
        if (base < lo) {
            // smallest u with u^2 + base >= lo
            u64 diff = lo - base;
            u_start = static_cast<u64>(std::ceil(std::sqrt(double(diff))));
            while (u_start > 0 && (u_start - 1) * (u_start - 1) + base >= lo) --u_start;
            while (u_start * u_start + base < lo) ++u_start;
        }
        for (u64 u = u_start;; ++u) {
            u64 val = u * u + base;
            if (val >= hi || val > x) break;
            bits[val - lo] = true;
        }
    }
}

} // namespace

PnSieve build_sieve(i64 n, u64 x, const SieveConfig& cfg) {
    if (n <= 0) throw invalid_input_error("build_sieve: n must be positive");
    if (x < 1) throw invalid_input_error("build_sieve: x must be >= 1");
    if (x > cfg.max_limit) throw resource_limit_error("build_sieve: x exceeds the sieve cap");

    if (!cfg.cache_dir.empty()) {
        auto path = sieve_cache_path(cfg.cache_dir, n, x);
        if (std::filesystem::exists(path)) return read_sieve_cache(path);
    }

    PnSieve sieve;
    sieve.n = n;
    sieve.limit = x;

    auto primes = prime_table(x);

    // Representability marks, segmented over the value range so segments can
    // run in parallel and merge in a fixed order.
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    u64 segment = std::max<u64>((x + 1 + threads - 1) / threads, 1u << 16);
    std::size_t nsegs = static_cast<std::size_t>((x + segment) / segment);
    std::vector<std::vector<u64>> per_segment(nsegs);
    parallel_chunks(nsegs, [&](std::size_t s0, std::size_t s1) {
        for (std::size_t s = s0; s < s1; ++s) {
            u64 lo = u64(s) * segment;
            u64 hi = std::min<u64>(x + 1, lo + segment);
            if (lo >= hi) continue;
            std::vector<bool> bits(hi - lo, false);
            mark_representable_segment(n, x, lo, hi, bits);
            auto& out = per_segment[s];
            for (u64 v = std::max<u64>(lo, 2); v < hi; ++v) {
                if (bits[v - lo] && primes[v]) out.push_back(v);
            }
        }
    });

    for (auto& seg : per_segment)
        sieve.members.insert(sieve.members.end(), seg.begin(), seg.end());

    sieve.weight_prefix.resize(sieve.members.size());
    KahanSum acc;
    for (std::size_t i = 0; i < sieve.members.size(); ++i) {
        acc.add(std::log(double(sieve.members[i])));
        sieve.weight_prefix[i] = acc.value();
    }

    if (!cfg.cache_dir.empty()) {
        std::filesystem::create_directories(cfg.cache_dir);
        write_sieve_cache(sieve, sieve_cache_path(cfg.cache_dir, n, x));
    }
    return sieve;
}

double weighted_count(const PnSieve& sieve, u64 x) {
    if (x > sieve.limit) throw out_of_range_error("weighted_count: x beyond sieve limit");
    std::size_t k = sieve.count_up_to(x);
    return k == 0 ? 0.0 : sieve.weight_prefix[k - 1];
}

DensityReport density_report(const PnSieve& sieve, const QuadField& field, u64 x) {
    if (x < 1000) throw invalid_input_error("density_report: x must be >= 10^3");
    DensityReport rep;
    rep.unweighted_density = double(sieve.count_up_to(x)) * std::log(double(x)) / double(x);
    rep.weighted_density = weighted_count(sieve, x) / double(x);
    rep.chebotarev_reference = 1.0 / double(2 * field.class_number);
    return rep;
}

u64 residue_form_count(i64 n, i64 p, i64 b, i64 enumeration_cutoff) {
    if (p < 3 || !is_prime(u64(p))) throw invalid_input_error("residue_form_count: p must be an odd prime");
    if (n % p == 0 || kronecker(-n, p) != 1)
        throw not_applicable_error("residue_form_count: requires p coprime to n with (-n|p) = +1");
    i64 bp = ((b % p) + p) % p;
    if (bp == 0) throw invalid_input_error("residue_form_count: b must be coprime to p");

    if (p <= enumeration_cutoff) {
        u64 count = 0;
        for (i64 xx = 0; xx < p; ++xx) {
            for (i64 yy = 0; yy < p; ++yy) {
                if ((xx * xx + n * yy * yy) % p == bp) ++count;
            }
        }
        return count;
    }
    // -n = w^2 (mod p): x^2 + n y^2 = (x - w y)(x + w y); (s, t) = (x - wy, x + wy)
    // is a bijection of [p]^2 since p is odd and w != 0. s t = b has exactly
    // p - 1 solutions.
    return u64(p - 1);
}

double pn_residue_density(const PnSieve& sieve, i64 Q, i64 b, u64 x) {
    if (Q < 1) throw invalid_input_error("pn_residue_density: Q must be positive");
    if (Q == 1) return 1.0;
    for (auto [p, e] : factorize(u64(Q))) {
        (void)e;
        if (p == 2 || sieve.n % i64(p) == 0 || kronecker(-sieve.n, i64(p)) != 1)
            throw not_applicable_error("pn_residue_density: Q has a disallowed prime factor");
    }
    if (std::gcd(((b % Q) + Q) % Q, Q) != 1)
        throw invalid_input_error("pn_residue_density: b must be coprime to Q");
    if (x < 10'000) throw invalid_input_error("pn_residue_density: x must be >= 10^4");
    std::size_t total = sieve.count_up_to(x);
    if (total == 0) return 0.0;
    u64 bq = u64(((b % Q) + Q) % Q);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if (sieve.members[i] % u64(Q) == bq) ++hits;
    }
    return double(hits) / double(total);
}

namespace {

constexpr char kMagic[5] = {'P', 'N', 'S', 'V', '1'};

void put_u64(std::ofstream& out, u64 v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

bool get_u64(std::ifstream& in, u64& v) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(buf[i]) << (8 * i);
    return true;
}

} // namespace

std::string sieve_cache_path(const std::string& dir, i64 n, u64 limit) {
    return dir + "/pn-n" + std::to_string(n) + "-x" + std::to_string(limit) + ".pnsv";
}

void write_sieve_cache(const PnSieve& sieve, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw cache_integrity_error("sieve cache: cannot open for write: " + tmp);
        out.write(kMagic, 5);
        put_u64(out, u64(sieve.n));
        put_u64(out, sieve.limit);
        put_u64(out, sieve.members.size());
        u64 checksum = 0;
        for (u64 p : sieve.members) {
            put_u64(out, p);
            checksum += p;
        }
        put_u64(out, checksum);
        if (!out) throw cache_integrity_error("sieve cache: write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

PnSieve read_sieve_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_integrity_error("sieve cache: cannot open: " + path);
    char magic[5];
    if (!in.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0)
        throw cache_integrity_error("sieve cache: bad magic");
    PnSieve sieve;
    u64 n = 0, limit = 0, count = 0;
    if (!get_u64(in, n) || !get_u64(in, limit) || !get_u64(in, count))
        throw cache_integrity_error("sieve cache: truncated header");
    sieve.n = i64(n);
    sieve.limit = limit;
    sieve.members.resize(count);
    u64 checksum = 0;
    for (u64 i = 0; i < count; ++i) {
        if (!get_u64(in, sieve.members[i])) throw cache_integrity_error("sieve cache: truncated body");
        checksum += sieve.members[i];
    }
    u64 stored = 0;
    if (!get_u64(in, stored) || stored != checksum)
        throw cache_integrity_error("sieve cache: checksum mismatch");
    char extra;
    if (in.read(&extra, 1)) throw cache_integrity_error("sieve cache: trailing bytes");

    sieve.weight_prefix.resize(sieve.members.size());
    KahanSum acc;
    for (std::size_t i = 0; i < sieve.members.size(); ++i) {
        acc.add(std::log(double(sieve.members[i])));
        sieve.weight_prefix[i] = acc.value();
    }
    return sieve;
}

} // namespace normform
