#include "normform/averages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normform {

Signal::Signal(std::map<i64, cplx> atoms) : atoms_(std::move(atoms)) {
    std::erase_if(atoms_, [](const auto& kv) { return kv.second == cplx(0.0); });
}

cplx Signal::at(i64 x) const {
    auto it = atoms_.find(x);
    return it == atoms_.end() ? cplx(0.0) : it->second;
}

void Signal::set(i64 x, cplx value) {
    if (value == cplx(0.0))
        atoms_.erase(x);
    else
        atoms_[x] = value;
}

i64 Signal::support_min() const {
    if (atoms_.empty()) throw invalid_input_error("Signal: empty support");
    return atoms_.begin()->first;
}

i64 Signal::support_max() const {
    if (atoms_.empty()) throw invalid_input_error("Signal: empty support");
    return atoms_.rbegin()->first;
}

double Signal::mass() const {
    KahanSum acc;
    for (const auto& [x, v] : atoms_) {
        (void)x;
        acc.add(v.real());
    }
    return acc.value();
}

Signal reflect(const Signal& f) {
    std::map<i64, cplx> atoms;
    for (const auto& [x, v] : f.atoms_) atoms[-x] = v;
    return Signal(std::move(atoms));
}

ToySystem ToySystem::cyclic(i64 N, i64 c) {
    if (N <= 0) throw invalid_input_error("ToySystem: cyclic modulus must be positive");
    return {Kind::cyclic, N, ((c % N) + N) % N};
}

i64 ToySystem::apply(i64 x, i128 k) const {
    if (kind == Kind::integer_shift) {
        i128 result = i128(x) - k;
        if (result > std::numeric_limits<i64>::max() || result < std::numeric_limits<i64>::min())
            throw overflow_error("ToySystem: shifted point exceeds 64-bit range");
        return i64(result);
    }
    i128 kc = (k % modulus) * step % modulus;
    i64 r = i64(((i128(x) - kc) % modulus + modulus) % modulus);
    return r;
}

Signal kernel(const PnSieve& sieve, const IntPolynomial& poly, u64 m) {
    if (m > sieve.limit) throw out_of_range_error("kernel: m beyond sieve limit");
    std::map<i64, cplx> atoms;
    std::size_t count = sieve.count_up_to(m);
    for (std::size_t i = 0; i < count; ++i) {
        u64 p = sieve.members[i];
        i128 arg = i128(poly.eval_wrap128(p)); // exact for |P(p)| < 2^127
        if (arg > std::numeric_limits<i64>::max() || arg < std::numeric_limits<i64>::min())
            throw overflow_error("kernel: P(p) exceeds 64-bit support range");
        atoms[i64(arg)] += std::log(double(p)) / double(m);
    }
    return Signal(std::move(atoms));
}

cplx ergodic_avg(const PnSieve& sieve, const IntPolynomial& poly, u64 m, const ToySystem& sys,
                 const std::function<cplx(i64)>& f, i64 x, Weighting weighting) {
    if (m > sieve.limit) throw out_of_range_error("ergodic_avg: m beyond sieve limit");
    std::size_t count = sieve.count_up_to(m);
    if (count == 0 && weighting == Weighting::unweighted)
        throw empty_average_error("ergodic_avg: no members up to m");
    KahanSumComplex acc;
    for (std::size_t i = 0; i < count; ++i) {
        u64 p = sieve.members[i];
        i128 jump = i128(poly.eval_wrap128(p));
        cplx value = f(sys.apply(x, jump));
        if (weighting == Weighting::log_weighted)
            acc.add(std::log(double(p)) * value);
        else
            acc.add(value);
    }
    if (weighting == Weighting::log_weighted) return acc.value() / double(m);
    return acc.value() / double(count);
}

AvgSequence avg_sequence(const PnSieve& sieve, const IntPolynomial& poly, const ToySystem& sys,
                         const std::function<cplx(i64)>& f, i64 x,
                         const std::vector<u64>& scales) {
    for (std::size_t i = 1; i < scales.size(); ++i) {
        if (scales[i] <= scales[i - 1])
            throw invalid_input_error("avg_sequence: scales must be strictly increasing");
    }
    AvgSequence out;
    out.scales = scales;
    for (u64 m : scales) {
        out.unweighted.push_back(ergodic_avg(sieve, poly, m, sys, f, x, Weighting::unweighted));
        out.weighted.push_back(ergodic_avg(sieve, poly, m, sys, f, x, Weighting::log_weighted));
    }
    return out;
}

namespace {

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = two_pi / double(len) * (inverse ? -1.0 : 1.0);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        for (auto& z : a) z /= double(n);
    }
}

} // namespace

Signal kernel_correlate(const Signal& kern, const Signal& f) {
    if (kern.empty() || f.empty()) return Signal{};
    std::map<i64, cplx> atoms;
    // (K (*) f)(x) = sum_y K(y) f(x + y): supported on supp(f) - supp(K).
    for (const auto& [y, kv] : kern.atoms()) {
        for (const auto& [z, fv] : f.atoms()) atoms[z - y] += kv * fv;
    }
    return Signal(std::move(atoms));
}

namespace {

Signal kernel_correlate_fft(const Signal& kern, const Signal& f, std::size_t fft_limit) {
    i64 k_lo = kern.support_min(), k_hi = kern.support_max();
    i64 f_lo = f.support_min(), f_hi = f.support_max();
    // Output range [f_lo - k_hi, f_hi - k_lo].
    u64 out_span = u64(f_hi - f_lo) + u64(k_hi - k_lo) + 1;
    std::size_t size = 1;
    while (size < out_span) size <<= 1;
    if (size > fft_limit) throw resource_limit_error("kernel_correlate: support too large for FFT");
    std::vector<cplx> ka(size, 0.0), fa(size, 0.0);
    // Correlation via convolution with the reversed kernel.
    for (const auto& [y, v] : kern.atoms()) ka[std::size_t(k_hi - y)] += v;
    for (const auto& [z, v] : f.atoms()) fa[std::size_t(z - f_lo)] += v;
    fft_inplace(ka, false);
    fft_inplace(fa, false);
    for (std::size_t i = 0; i < size; ++i) ka[i] *= fa[i];
    fft_inplace(ka, true);
    std::map<i64, cplx> atoms;
    i64 base = f_lo - k_hi;
    for (std::size_t i = 0; i < out_span; ++i) {
        cplx v = ka[i];
        if (std::abs(v) > 1e-12) atoms[base + i64(i)] = v;
    }
    return Signal(std::move(atoms));
}

} // namespace

Signal maximal_fn(const PnSieve& sieve, const IntPolynomial& poly, const Signal& f, u64 M,
                  const MaximalConfig& cfg) {
    if (f.empty()) return Signal{};
    if (M > sieve.limit) throw out_of_range_error("maximal_fn: M beyond sieve limit");
    std::map<i64, double> sup;
    for (u64 m = 1; m <= M; m <<= 1) {
        std::size_t members = sieve.count_up_to(m);
        if (members == 0) continue;
        Signal km = kernel(sieve, poly, m);
        u128 work = u128(f.support_size()) * members;
        Signal conv = work <= cfg.direct_limit ? kernel_correlate(km, f)
                                               : kernel_correlate_fft(km, f, cfg.fft_limit);
        for (const auto& [x, v] : conv.atoms()) {
            double a = std::abs(v);
            auto it = sup.find(x);
            if (it == sup.end() || it->second < a) sup[x] = a;
        }
    }
    std::map<i64, cplx> atoms;
    for (const auto& [x, v] : sup) atoms[x] = v;
    return Signal(std::move(atoms));
}

} // namespace normform
