#include "normform/numeric.hpp"

#include <algorithm>
#include <numeric>

namespace normform {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

i64 mod_inverse(i64 a, i64 m) {
    if (m <= 0) throw invalid_input_error("mod_inverse: modulus must be positive");
    i64 r0 = m, r1 = ((a % m) + m) % m;
    i64 t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) throw invalid_input_error("mod_inverse: argument not invertible");
    return ((t0 % m) + m) % m;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos) {
        if ((a & 1) == 0) return 0;
        // (2|a) twice cancels; only the parity of twos matters.
        if ((twos & 1) && (a % 8 == 3 || a % 8 == 5 || a % 8 == -3 || a % 8 == -5)) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    // Jacobi symbol on odd n via reciprocity.
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            if (n % 8 == 3 || n % 8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::optional<u64> sqrt_mod(u64 a, u64 p)
{
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli–Shanks.
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
            if (i == m) return std::nullopt;
        }
        u64 b = powmod(c, u64(1) << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

u64 euler_phi(u64 n) {
    u64 result = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        result -= result / p;
    }
    return result;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

FixedPointFrequency::FixedPointFrequency(double alpha) {
    double frac = alpha - std::floor(alpha);
    if (frac >= 1.0) frac = 0.0; // alpha was a negative number rounding up
    // Split into two 64-bit halves to stay exact.
    double scaled_hi = std::floor(frac * 0x1p64);
    double rem = frac * 0x1p64 - scaled_hi;
    u64 hi = static_cast<u64>(scaled_hi);
    double lo_scaled = rem * 0x1p64;
    if (lo_scaled >= 0x1p64) lo_scaled = 0x1p64 - 4096.0;
    if (lo_scaled < 0.0) lo_scaled = 0.0;
    u64 lo = static_cast<u64>(lo_scaled);
    bits_ = (u128(hi) << 64) | lo;
}

double FixedPointFrequency::frac_mul(u128 k) const {
    // Low 128 bits of bits_ * k: the fractional part of alpha*k in units
    // of 2^-128.
    u64 a_hi = static_cast<u64>(bits_ >> 64), a_lo = static_cast<u64>(bits_);
    u64 k_hi = static_cast<u64>(k >> 64), k_lo = static_cast<u64>(k);
    u128 low = u128(a_lo) * k_lo;
    u128 cross = (u128(a_lo) * k_hi + u128(a_hi) * k_lo) << 64;
    u128 prod = low + cross; // mod 2^128 by wraparound
    return static_cast<double>(static_cast<u64>(prod >> 64)) * 0x1p-64 +
           static_cast<double>(static_cast<u64>(prod)) * 0x1p-128;
}

double FixedPointFrequency::value() const {
    return static_cast<double>(static_cast<u64>(bits_ >> 64)) * 0x1p-64 +
           static_cast<double>(static_cast<u64>(bits_)) * 0x1p-128;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                     unsigned max_threads) {
    if (n == 0) return;
    unsigned workers = std::max(1u, max_threads);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers == 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : threads) t.join();
}

} // namespace normform
