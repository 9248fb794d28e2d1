#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "normform/errors.hpp"

namespace normform {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using cplx = std::complex<double>;

// Kahan–Neumaier compensated accumulator.
class KahanSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumComplex {
  public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b);
i64 mod_inverse(i64 a, i64 m); // throws invalid_input_error if not invertible

bool is_prime(u64 n); // deterministic Miller–Rabin for 64-bit inputs

// Kronecker symbol (a|n), defined for all integers.
int kronecker(i64 a, i64 n);

// Square root of a mod odd prime p (Tonelli–Shanks); empty if a is a
// non-residue.
std::optional<u64> sqrt_mod(u64 a, u64 p);

u64 euler_phi(u64 n);

// Prime factorization by trial division, (prime, exponent) pairs in
// increasing prime order.
std::vector<std::pair<u64, int>> factorize(u64 n);

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

// e(x) = exp(2*pi*i*x).
inline cplx unit_phase(double x) { return {std::cos(two_pi * x), std::sin(two_pi * x)}; }

// A frequency quantized to a Q.128 fixed-point fraction of the circle.
// Multiplying by an integer with 128-bit wraparound yields the phase
// alpha*k mod 1 exactly for the quantized alpha, so no precision is lost
// to the size of k.
class FixedPointFrequency {
  public:
    explicit FixedPointFrequency(double alpha);
    // alpha * k mod 1 for the quantized alpha, as a double in [0, 1).
    double frac_mul(u128 k) const;
    double value() const;

  private:
    u128 bits_ = 0; // alpha mod 1 in units of 2^-128
};

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one thread
// per chunk. Deterministic as long as chunks write disjoint state.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                     unsigned max_threads = std::thread::hardware_concurrency());

} // namespace normform
