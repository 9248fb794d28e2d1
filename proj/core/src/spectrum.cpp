#include "normform/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace normform {

double mollifier(double beta) {
    double b = std::abs(beta);
    if (b <= 0.25) return 1.0;
    if (b >= 0.5) return 0.0;
    // Quintic smoothstep on the transition band keeps the bump C^2.
    double t = 4.0 * b - 1.0; // in (0, 1)
    double s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    return 1.0 - s;
}

double mollifier_scaled(int s, double beta) { return mollifier(std::ldexp(beta, s)); }

NearestFraction nearest_fraction(double alpha, i64 q_bound) {
    if (q_bound < 1) throw invalid_input_error("nearest_fraction: bound must be >= 1");
    double x = alpha - std::floor(alpha);
    if (x >= 1.0) x = 0.0;
    // Continued fraction of x with convergents p/q capped at q_bound; the
    // best approximation with bounded denominator is the last convergent
    // inside the bound or a semiconvergent past it.
    i64 p0 = 0, q0 = 1; // h_{k-2}/k_{k-2}
    i64 p1 = 1, q1 = 0; // h_{k-1}/k_{k-1} (sentinel)
    double y = x;
    i64 best_p = 0, best_q = 1;
    for (int iter = 0; iter < 64; ++iter) {
        double af = std::floor(y);
        // Overflow-safe: once the next convergent would leave the bound,
        // switch to the largest admissible semiconvergent.
        bool too_big = q1 > 0 && af > double((q_bound - q0) / q1);
        i64 a = too_big ? 0 : i64(af);
        if (too_big || a * q1 + q0 > q_bound) {
            if (q1 > 0) {
                i64 t = (q_bound - q0) / q1;
                i64 sp = t * p1 + p0, sq = t * q1 + q0;
                double d_conv = std::abs(x - double(best_p) / double(best_q));
                if (sq >= 1 && sq <= q_bound &&
                    std::abs(x - double(sp) / double(sq)) < d_conv) {
                    best_p = sp;
                    best_q = sq;
                }
            }
            break;
        }
        i64 p2 = a * p1 + p0;
        i64 q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (q1 >= 1) {
            best_p = p1;
            best_q = q1;
        }
        double frac = y - af;
        if (frac < 1e-15) break; // x is (numerically) rational with this q
        y = 1.0 / frac;
    }
    // Wrap to the torus: compare against the integer frequency as well.
    double d_frac = std::abs(x - double(best_p) / double(best_q));
    double d_zero = std::min(x, 1.0 - x);
    NearestFraction out;
    if (best_q == 1 || d_zero < d_frac) {
        out.frac = make_fraction(0, 1);
        out.distance = d_zero;
    } else {
        i64 a_mod = ((best_p % best_q) + best_q) % best_q;
        i64 g = std::gcd(a_mod, best_q);
        if (g > 1) {
            a_mod /= g;
            best_q /= g;
        }
        out.frac = best_q == 1 ? make_fraction(0, 1) : make_fraction(a_mod, best_q);
        out.distance = d_frac;
    }
    return out;
}

i64 ArcSpec::denominator_bound() const {
    double bound = std::pow(std::log(double(x)), B);
    return std::max<i64>(1, i64(bound));
}

double ArcSpec::radius() const {
    return std::pow(std::log(double(x)), B) / std::pow(double(x), double(degree));
}

std::optional<ReducedFraction> ArcSpec::classify(double alpha) const {
    auto near = nearest_fraction(alpha, denominator_bound());
    if (near.distance <= radius()) return near.frac;
    return std::nullopt;
}

namespace {

struct GK15 {
    // QUADPACK Gauss(7)-Kronrod(15) nodes and weights on [-1, 1].
    static constexpr double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    static constexpr double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
};

struct Panel {
    double a, b;
    cplx integral;
    double err;
};

template <class F>
Panel gk15(const F& f, double a, double b) {
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    cplx resk = 0, resg = 0;
    for (int i = 0; i < 7; ++i) {
        cplx f1 = f(mid - half * GK15::xgk[i]);
        cplx f2 = f(mid + half * GK15::xgk[i]);
        resk += GK15::wgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += GK15::wg[i / 2] * (f1 + f2);
    }
    cplx fc = f(mid);
    resk += GK15::wgk[7] * fc;
    resg += GK15::wg[3] * fc;
    Panel p;
    p.a = a;
    p.b = b;
    p.integral = half * resk;
    p.err = std::abs(half * (resk - resg));
    return p;
}

} // namespace

cplx oscillatory_integral(const IntPolynomial& poly, double m, double alpha) {
    if (alpha == 0.0) return 1.0;
    auto integrand = [&](double u) { return unit_phase(alpha * poly.eval_double(m * u)); };

    // Seed with panels sized to the total phase variation.
    double turns =
        std::abs(alpha) * (std::abs(poly.eval_double(m)) + std::abs(poly.eval_double(0.0)) + 1.0);
    if (!(turns < 5e6))
        throw numeric_error("oscillatory_integral: phase variation beyond accuracy budget");
    std::size_t seed = std::clamp<std::size_t>(std::size_t(turns * 2.0) + 1, 1, std::size_t(1) << 18);
    constexpr double tol = 1e-10;
    constexpr std::size_t budget = std::size_t(1) << 23; // integrand evaluations

    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);
    cplx total = 0;
    double total_err = 0;
    std::size_t evals = 0;
    for (std::size_t i = 0; i < seed; ++i) {
        double a = double(i) / double(seed);
        double b = double(i + 1) / double(seed);
        Panel p = gk15(integrand, a, b);
        evals += 15;
        total += p.integral;
        total_err += p.err;
        queue.push(p);
    }
    while (total_err > tol && !queue.empty()) {
        if (evals > budget)
            throw numeric_error("oscillatory_integral: accuracy budget exhausted");
        Panel worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(integrand, worst.a, mid);
        Panel right = gk15(integrand, mid, worst.b);
        evals += 30;
        total += left.integral + right.integral - worst.integral;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }
    return total;
}

cplx kernel_transform(const PnSieve& sieve, const IntPolynomial& poly, u64 m, double alpha) {
    if (m > sieve.limit) throw out_of_range_error("kernel_transform: m beyond sieve limit");
    FixedPointFrequency freq(alpha);
    KahanSumComplex acc;
    std::size_t count = sieve.count_up_to(m);
    for (std::size_t i = 0; i < count; ++i) {
        u64 p = sieve.members[i];
        double phase = freq.frac_mul(poly.eval_wrap128(p));
        acc.add(std::log(double(p)) * unit_phase(phase));
    }
    return acc.value() / double(m);
}

cplx CoefficientCache::get(const ReducedFraction& frac) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(frac);
        if (it != memo_.end()) return it->second;
    }
    cplx value = coefficient(field_, poly_, frac);
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(frac, value);
    return value;
}

namespace {

double wrap_to_half(double delta) {
    double d = delta - std::round(delta);
    return d;
}

} // namespace

cplx approximant_block(const CoefficientCache& cache, u64 m, int s, double alpha) {
    if (s < 1) throw invalid_input_error("approximant_block: s must be >= 1");
    i64 hi = (i64(1) << s) - 1; // denominators q in [2^(s-1), 2^s)
    i64 lo = i64(1) << (s - 1);
    auto near = nearest_fraction(alpha, hi);
    i64 q = near.frac.q;
    if (q < lo || q > hi) return 0.0;
    double support = std::ldexp(1.0, -(6 * s + 1));
    if (near.distance >= support) return 0.0;
    // Any second fraction of this block is at distance > 2^-2s - support
    // > support away, so the chosen term is the only one alive.
    double delta = wrap_to_half(alpha - near.frac.value());
    double window = mollifier_scaled(6 * s, delta);
    if (window == 0.0) return 0.0;
    cplx v = oscillatory_integral(cache.poly(), double(m), delta);
    return cache.get(near.frac) * v * window;
}

cplx approximant_transform(const CoefficientCache& cache, u64 m, double B, double alpha) {
    if (m < 16) throw invalid_input_error("approximant_transform: m must be >= 16");
    double bound = std::pow(std::log(double(m)), B);
    cplx sum = 0;
    for (int s = 1; std::ldexp(1.0, s) <= bound; ++s) sum += approximant_block(cache, m, s, alpha);
    return sum;
}

cplx approximant_transform_wide(const CoefficientCache& cache, u64 m, double alpha) {
    if (m < 16) throw invalid_input_error("approximant_transform_wide: m must be >= 16");
    double bound = std::sqrt(double(m)) / 16.0;
    cplx sum = 0;
    for (int s = 1; std::ldexp(1.0, s) <= bound; ++s) sum += approximant_block(cache, m, s, alpha);
    return sum;
}

MajorArcResidual major_arc_residual(const PnSieve& sieve, const QuadField& field,
                                    const IntPolynomial& poly, u64 x,
                                    const ReducedFraction& frac, double alpha, double B) {
    ArcSpec arcs{x, B, poly.degree()};
    double delta = wrap_to_half(alpha - frac.value());
    if (frac.q > arcs.denominator_bound() || std::abs(delta) > arcs.radius())
        throw precondition_error("major_arc_residual: alpha is not in the arc of frac");

    MajorArcResidual out;
    FixedPointFrequency freq(alpha);
    KahanSumComplex lhs;
    std::size_t count = sieve.count_up_to(x);
    for (std::size_t i = 0; i < count; ++i) {
        u64 p = sieve.members[i];
        lhs.add(std::log(double(p)) * unit_phase(freq.frac_mul(poly.eval_wrap128(p))));
    }
    out.lhs = lhs.value();
    out.main = double(x) * coefficient(field, poly, frac) *
               oscillatory_integral(poly, double(x), delta);
    out.residual_over_x = std::abs(out.lhs - out.main) / double(x);
    return out;
}

std::vector<MinorArcRow> minor_arc_scan(const PnSieve& sieve, const IntPolynomial& poly,
                                        const std::vector<double>& alphas,
                                        const std::vector<u64>& xs, double B) {
    std::vector<MinorArcRow> rows;
    for (double alpha : alphas) {
        FixedPointFrequency freq(alpha);
        for (u64 x : xs) {
            if (x > sieve.limit) throw out_of_range_error("minor_arc_scan: x beyond sieve limit");
            MinorArcRow row;
            row.alpha = alpha;
            row.x = x;
            ArcSpec arcs{x, B, poly.degree()};
            if (auto center = arcs.classify(alpha)) {
                row.major = true;
                row.major_center = *center;
            }
            KahanSumComplex acc;
            std::size_t count = sieve.count_up_to(x);
            for (std::size_t i = 0; i < count; ++i) {
                u64 p = sieve.members[i];
                double lp = std::log(double(p));
                for (u128 pk = p;; pk *= p) {
                    acc.add(lp * unit_phase(freq.frac_mul(poly.eval_wrap128(pk))));
                    if (pk > u128(x) / p) break;
                }
            }
            row.value = std::abs(acc.value()) / double(x);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<cplx> kernel_transform_grid(const PnSieve& sieve, const IntPolynomial& poly, u64 m,
                                        u64 grid_size) {
    if (grid_size < 1) throw invalid_input_error("kernel_transform_grid: empty grid");
    if (m > sieve.limit) throw out_of_range_error("kernel_transform_grid: m beyond sieve limit");
    std::vector<double> weight_bins(grid_size, 0.0);
    std::size_t count = sieve.count_up_to(m);
    for (std::size_t i = 0; i < count; ++i) {
        u64 p = sieve.members[i];
        weight_bins[poly.eval_mod(p, grid_size)] += std::log(double(p));
    }
    std::vector<cplx> roots(grid_size);
    for (u64 k = 0; k < grid_size; ++k) roots[k] = unit_phase(double(k) / double(grid_size));
    std::vector<cplx> out(grid_size);
    parallel_chunks(grid_size, [&](std::size_t j0, std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j) {
            KahanSumComplex acc;
            for (u64 r = 0; r < grid_size; ++r) {
                if (weight_bins[r] == 0.0) continue;
                acc.add(weight_bins[r] * roots[(u64(j) * r) % grid_size]);
            }
            out[j] = acc.value() / double(m);
        }
    });
    return out;
}

SupErrorScan sup_error_scan(const PnSieve& sieve, const QuadField& field,
                            const IntPolynomial& poly, u64 m, double B, u64 grid_size) {
    if (grid_size < 256) throw invalid_input_error("sup_error_scan: grid must be >= 256");
    if (m > sieve.limit) throw out_of_range_error("sup_error_scan: m beyond sieve limit");

    auto kernel_values = kernel_transform_grid(sieve, poly, m, grid_size);
    CoefficientCache cache(field, poly);
    std::vector<double> errors(grid_size, 0.0);
    parallel_chunks(grid_size, [&](std::size_t j0, std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j) {
            double alpha = double(j) / double(grid_size);
            cplx approx = approximant_transform(cache, m, B, alpha);
            errors[j] = std::abs(kernel_values[j] - approx);
        }
    });

    SupErrorScan out;
    out.errors = std::move(errors);
    for (u64 j = 0; j < grid_size; ++j) {
        if (out.errors[j] > out.sup_err) {
            out.sup_err = out.errors[j];
            out.argmax_alpha = double(j) / double(grid_size);
        }
    }
    return out;
}

namespace {

// Largest e with p^e <= N.
int max_exponent(u64 p, u64 N) {
    int e = 0;
    u128 power = p;
    while (power <= N) {
        ++e;
        power *= p;
    }
    return e;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (u64 p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (u64 m = p * p; m <= n; m += p) composite[m] = true;
    }
    return primes;
}

double small_prime_threshold(const IWConfig& cfg) {
    return std::pow(double(cfg.N), cfg.rho / 2.0) + 1e-9;
}

} // namespace

std::vector<u64> iw_base_set(const IWConfig& cfg) {
    if (cfg.rho <= 0 || cfg.rho >= 1) throw invalid_input_error("iw_base_set: rho must be in (0,1)");
    int R = cfg.R();
    if (R >= 63 || cfg.N < (u64(1) << R))
        throw invalid_input_error("iw_base_set: N must satisfy N >= 2^R");
    if (cfg.N > 100'000'000) throw resource_limit_error("iw_base_set: N too large to enumerate");
    double threshold = small_prime_threshold(cfg);
    auto primes = primes_up_to(cfg.N);
    std::vector<u64> out;
    u128 product = 1;
    bool have_product = false;
    for (u64 p : primes) {
        int e = max_exponent(p, cfg.N);
        if (double(p) <= threshold) {
            have_product = true;
            for (int i = 0; i < e; ++i) {
                product *= p;
                if (product > u128(std::numeric_limits<u64>::max()))
                    throw resource_limit_error("iw_base_set: small-prime product exceeds 64 bits");
            }
        } else {
            u64 power = 1;
            for (int i = 0; i < e; ++i) power *= p;
            out.push_back(power);
        }
    }
    if (have_product) out.push_back(static_cast<u64>(product));
    std::sort(out.begin(), out.end());
    return out;
}

bool iw_denominator_member(const IWConfig& cfg, u64 q) {
    if (q == 0) throw invalid_input_error("iw_denominator_member: q must be positive");
    if (q == 1) return true;
    double threshold = small_prime_threshold(cfg);
    int blocks = 0;
    bool small_block = false;
    for (auto [p, e] : factorize(q)) {
        if (p > cfg.N) return false;
        if (e > max_exponent(p, cfg.N)) return false;
        if (double(p) <= threshold)
            small_block = true;
        else
            ++blocks;
    }
    if (small_block) ++blocks;
    return blocks <= cfg.R();
}

std::vector<ReducedFraction> iw_frequencies(const IWConfig& cfg) {
    if (cfg.rho <= 0 || cfg.rho >= 1)
        throw invalid_input_error("iw_frequencies: rho must be in (0,1)");
    if (cfg.R() >= 63 || cfg.N < (u64(1) << cfg.R()))
        throw invalid_input_error("iw_frequencies: N must satisfy N >= 2^R");
    if (cfg.q_cap == 0)
        throw invalid_input_error("iw_frequencies: enumeration requires a denominator cap");
    if (cfg.q_cap > 1'000'000)
        throw resource_limit_error("iw_frequencies: q_cap too large to materialize");
    std::vector<ReducedFraction> out;
    out.push_back(make_fraction(0, 1));
    for (u64 q = 2; q <= cfg.q_cap; ++q) {
        if (!iw_denominator_member(cfg, q)) continue;
        for (u64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) == 1) out.push_back(make_fraction(i64(a), i64(q)));
        }
    }
    return out;
}

u64 iw_height(double rho, const ReducedFraction& frac) {
    if (rho <= 0 || rho >= 1) throw invalid_input_error("iw_height: rho must be in (0,1)");
    IWConfig cfg;
    cfg.rho = rho;
    int R = cfg.R();
    if (R >= 62) throw resource_limit_error("iw_height: rho too small");
    u64 N = u64(1) << R;
    while (true) {
        cfg.N = N;
        if (iw_denominator_member(cfg, u64(frac.q))) return N;
        if (N > (u64(1) << 62)) throw resource_limit_error("iw_height: height exceeds 2^62");
        N <<= 1;
    }
}

} // namespace normform
