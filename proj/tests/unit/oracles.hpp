#pragma once

// Brute-force oracles shared across suites. These deliberately avoid the
// library's production code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracles {

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<bool> composite(std::size_t(n + 1), false);
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= n; ++p) {
        if (composite[std::size_t(p)]) continue;
        out.push_back(p);
        for (std::int64_t m = p * p; m <= n; m += p) composite[std::size_t(m)] = true;
    }
    return out;
}

// Count of reduced primitive forms (A,B,C), B^2-4AC = disc, straight loops.
inline std::int64_t reduced_form_count(std::int64_t disc) {
    std::int64_t count = 0;
    for (std::int64_t A = 1; A * A * 3 <= -disc; ++A) {
        for (std::int64_t B = -A; B <= A; ++B) {
            std::int64_t num = B * B - disc;
            if (num % (4 * A) != 0) continue;
            std::int64_t C = num / (4 * A);
            if (C < A) continue;
            if (B < 0 && (B == -A || A == C)) continue;
            if (std::gcd(std::gcd(A, B < 0 ? -B : B), C) != 1) continue;
            ++count;
        }
    }
    return count;
}

// chi_{-4}: 1 on 1 mod 4, -1 on 3 mod 4, 0 on evens.
inline int chi_minus4(std::int64_t d) {
    if (d % 2 == 0) return 0;
    return d % 4 == 1 ? 1 : -1;
}

// Number of Gaussian ideals of norm exactly m: sum of chi_{-4} over divisors.
inline std::int64_t gaussian_ideal_count(std::int64_t m) {
    std::int64_t total = 0;
    for (std::int64_t d = 1; d * d <= m; ++d) {
        if (m % d) continue;
        total += chi_minus4(d);
        if (d != m / d) total += chi_minus4(m / d);
    }
    return total;
}

// Exhaustive r-variation over all increasing chains (exponential; L <= 14).
inline double exhaustive_variation(const std::vector<std::complex<double>>& seq, double r) {
    std::size_t L = seq.size();
    double best = 0.0;
    // DFS over chains extending from each start index.
    struct Frame {
        std::size_t last;
        double sum;
    };
    std::vector<Frame> stack;
    for (std::size_t s = 0; s < L; ++s) stack.push_back({s, 0.0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        best = std::max(best, f.sum);
        for (std::size_t nxt = f.last + 1; nxt < L; ++nxt)
            stack.push_back({nxt, f.sum + std::pow(std::abs(seq[nxt] - seq[f.last]), r)});
    }
    return std::pow(best, 1.0 / r);
}

// Exhaustive jump count straight from the sup-over-chains definition
// (exponential; L <= 14).
inline std::uint64_t exhaustive_jump_count(const std::vector<std::complex<double>>& seq,
                                           double lambda) {
    std::size_t L = seq.size();
    std::uint64_t best = 0;
    struct Frame {
        std::size_t last;
        std::uint64_t jumps;
    };
    std::vector<Frame> stack;
    for (std::size_t s = 0; s < L; ++s) stack.push_back({s, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        best = std::max(best, f.jumps);
        for (std::size_t nxt = f.last + 1; nxt < L; ++nxt) {
            if (std::abs(seq[nxt] - seq[f.last]) > lambda) stack.push_back({nxt, f.jumps + 1});
        }
    }
    return best;
}

} // namespace oracles
