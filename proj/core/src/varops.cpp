#include "normform/varops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normform {

namespace {

void check_anchors(const std::vector<std::size_t>& anchors, std::size_t L, const char* who) {
    for (std::size_t j = 0; j < anchors.size(); ++j) {
        if (anchors[j] < 1 || anchors[j] > L)
            throw invalid_input_error(std::string(who) + ": anchor out of range");
        if (j > 0 && anchors[j] <= anchors[j - 1])
            throw invalid_input_error(std::string(who) + ": anchors must be strictly increasing");
    }
}

// sqrt(sum_j sup_{i in [anchor_j, end_j]} |f_i - f_{anchor_j}|^2), windows
// given as 1-based inclusive (anchor, end) pairs.
double osc_windows(const FiniteSeq& seq,
                   const std::vector<std::pair<std::size_t, std::size_t>>& windows) {
    KahanSum total;
    for (const auto& [anchor, end] : windows) {
        double best = 0;
        cplx base = seq[anchor - 1];
        for (std::size_t i = anchor; i <= end; ++i)
            best = std::max(best, std::norm(seq[i - 1] - base));
        total.add(best);
    }
    return std::sqrt(std::max(0.0, total.value()));
}

std::vector<std::pair<std::size_t, std::size_t>>
anchor_windows(const std::vector<std::size_t>& anchors, std::size_t L) {
    std::vector<std::pair<std::size_t, std::size_t>> windows;
    for (std::size_t j = 0; j + 1 < anchors.size(); ++j)
        windows.emplace_back(anchors[j], anchors[j + 1] - 1);
    if (anchors.size() >= 2) windows.emplace_back(anchors.back(), L);
    return windows;
}

} // namespace

double v_variation(const FiniteSeq& seq, double r) {
    if (r < 1.0) throw invalid_input_error("v_variation: r must be >= 1");
    std::size_t L = seq.size();
    if (L < 2) return 0.0;
    // best[j]: largest sum of |increment|^r over chains ending at j.
    std::vector<double> best(L, 0.0);
    double top = 0.0;
    for (std::size_t j = 1; j < L; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double step = std::pow(std::abs(seq[j] - seq[i]), r);
            best[j] = std::max(best[j], best[i] + step);
        }
        top = std::max(top, best[j]);
    }
    return std::pow(top, 1.0 / r);
}

double oscillation(const FiniteSeq& seq, const std::vector<std::size_t>& anchors) {
    check_anchors(anchors, seq.size(), "oscillation");
    if (anchors.size() <= 1) return 0.0;
    return osc_windows(seq, anchor_windows(anchors, seq.size()));
}

u64 jump_count(const FiniteSeq& seq, double lambda) {
    if (lambda <= 0) throw invalid_input_error("jump_count: lambda must be positive");
    std::size_t L = seq.size();
    if (L < 2) return 0;
    std::vector<u64> jumps(L, 0); // most jumps over chains ending at j
    u64 best = 0;
    for (std::size_t j = 1; j < L; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (std::abs(seq[j] - seq[i]) > lambda) jumps[j] = std::max(jumps[j], jumps[i] + 1);
        }
        best = std::max(best, jumps[j]);
    }
    return best;
}

u64 jump_count_dp(const FiniteSeq& seq, double lambda) {
    if (lambda <= 0) throw invalid_input_error("jump_count_dp: lambda must be positive");
    std::size_t L = seq.size();
    if (L < 2) return 0;
    std::vector<u64> jumps(L, 0); // most jumps over chains starting at i
    u64 best = 0;
    for (std::size_t i = L - 1; i-- > 0;) {
        for (std::size_t j = i + 1; j < L; ++j) {
            if (std::abs(seq[i] - seq[j]) > lambda) jumps[i] = std::max(jumps[i], jumps[j] + 1);
        }
        best = std::max(best, jumps[i]);
    }
    return best;
}

bool InequalityReport::all_hold(double tol) const {
    for (const auto& res : results) {
        if (res.max_slack > tol) return false;
    }
    return true;
}

namespace {

struct Checker {
    InequalityReport report;

    void record(const std::string& name, double lhs, double rhs) {
        auto it = std::find_if(report.results.begin(), report.results.end(),
                               [&](const auto& r) { return r.name == name; });
        if (it == report.results.end()) {
            report.results.push_back({name, 0, 0, -std::numeric_limits<double>::infinity()});
            it = std::prev(report.results.end());
        }
        it->checked++;
        double slack = lhs - rhs;
        if (slack > 1e-9) it->violations++;
        it->max_slack = std::max(it->max_slack, slack);
    }
};

std::vector<std::size_t> dyadic_ladder(std::size_t L) {
    std::vector<std::size_t> anchors;
    for (std::size_t v = 1; v <= L; v <<= 1) anchors.push_back(v);
    return anchors;
}

} // namespace

InequalityReport inequality_suite(const FiniteSeq& seq, const SuiteSpec& spec) {
    FiniteSeq reversed(seq.rbegin(), seq.rend());
    return inequality_suite(seq, reversed, spec);
}

InequalityReport inequality_suite(const FiniteSeq& seq, const FiniteSeq& other,
                                  const SuiteSpec& spec) {
    if (seq.empty()) throw invalid_input_error("inequality_suite: empty sequence");
    if (other.size() != seq.size())
        throw invalid_input_error("inequality_suite: size mismatch");
    std::size_t L = seq.size();
    Checker chk;

    double v2 = v_variation(seq, 2.0);
    auto anchors = spec.anchors.empty() ? dyadic_ladder(L) : spec.anchors;

    chk.record("osc_le_v2", oscillation(seq, anchors), v2);
    for (double r : spec.variation_orders) {
        if (r <= 2.0) throw invalid_input_error("inequality_suite: variation orders must exceed 2");
        chk.record("vr_le_v2", v_variation(seq, r), v2);
    }
    for (double lambda : spec.jump_levels) {
        chk.record("jump_le_v2", lambda * std::sqrt(double(jump_count(seq, lambda))), v2);
    }

    // Dyadic-block bound for V^2 when the length is a power of two.
    if (L >= 2 && (L & (L - 1)) == 0) {
        int levels = 0;
        while ((std::size_t(1) << (levels + 1)) <= L) ++levels;
        KahanSum rhs;
        for (int i = 0; i < levels; ++i) {
            KahanSum level;
            std::size_t stepw = std::size_t(1) << i;
            for (std::size_t j = 0; stepw * (j + 1) <= L - 1; ++j)
                level.add(std::norm(seq[stepw * (j + 1)] - seq[stepw * j]));
            rhs.add(std::sqrt(std::max(0.0, level.value())));
        }
        chk.record("rademacher_menshov", v2, std::numbers::sqrt2 * rhs.value());
    }

    // Quasi-triangle inequalities against the second sequence.
    FiniteSeq sum(L);
    for (std::size_t i = 0; i < L; ++i) sum[i] = seq[i] + other[i];
    chk.record("quasi_triangle_osc", oscillation(sum, anchors),
               oscillation(seq, anchors) + oscillation(other, anchors));
    for (double r : spec.variation_orders)
        chk.record("quasi_triangle_var", v_variation(sum, r),
                   v_variation(seq, r) + v_variation(other, r));
    for (double lambda : spec.jump_levels) {
        double lhs = lambda * std::sqrt(double(jump_count(sum, lambda)));
        double rhs = lambda * std::sqrt(double(jump_count(seq, lambda / 2))) +
                     lambda * std::sqrt(double(jump_count(other, lambda / 2)));
        chk.record("quasi_triangle_jump", lhs, rhs);
    }
    return chk.report;
}

namespace {

// V^{r,S}_A: blocks [A_j, A_{j+1}) plus the closing block [A_t, L], chain
// sums of r-th powers maximized inside each block.
double short_variation(const FiniteSeq& seq, const std::vector<std::size_t>& blocks, double r) {
    KahanSum total;
    std::vector<std::pair<std::size_t, std::size_t>> windows;
    for (std::size_t j = 0; j + 1 < blocks.size(); ++j)
        windows.emplace_back(blocks[j], blocks[j + 1] - 1);
    windows.emplace_back(blocks.back(), seq.size());
    for (const auto& [lo, hi] : windows) {
        FiniteSeq block(seq.begin() + std::ptrdiff_t(lo - 1), seq.begin() + std::ptrdiff_t(hi));
        total.add(std::pow(v_variation(block, r), r));
    }
    return std::pow(std::max(0.0, total.value()), 1.0 / r);
}

// Interval-pair jump count on the subsampled sequence: most pairs
// s_1 < t_1 <= s_2 < t_2 <= ... with |g_{t_i} - g_{s_i}| > lambda.
u64 interval_jump_count(const FiniteSeq& g, double lambda) {
    if (g.size() < 2) return 0;
    u64 count = 0;
    std::size_t last_end = 0;
    for (std::size_t t = 1; t < g.size(); ++t) {
        for (std::size_t s = last_end; s < t; ++s) {
            if (std::abs(g[t] - g[s]) > lambda) {
                ++count;
                last_end = t;
                break;
            }
        }
    }
    return count;
}

} // namespace

LongShortReport long_short_split(const FiniteSeq& seq, const std::vector<std::size_t>& blocks,
                                 double r, double lambda,
                                 const std::vector<std::size_t>& anchors) {
    std::size_t L = seq.size();
    check_anchors(blocks, L, "long_short_split(blocks)");
    check_anchors(anchors, L, "long_short_split(anchors)");
    if (blocks.empty() || blocks.front() != 1)
        throw invalid_input_error("long_short_split: block anchors must start at 1");
    if (r <= 2.0) throw invalid_input_error("long_short_split: r must exceed 2");
    if (lambda <= 0) throw invalid_input_error("long_short_split: lambda must be positive");

    FiniteSeq sub;
    for (std::size_t a : blocks) sub.push_back(seq[a - 1]);

    LongShortReport out;
    out.parts.variation_long = v_variation(sub, r);
    out.parts.variation_short = short_variation(seq, blocks, r);
    out.parts.jump_long = interval_jump_count(sub, lambda / 3.0);

    // Osc^L: J_j = last block anchor <= I_j; windows over block anchors.
    double osc_long = 0;
    if (anchors.size() >= 2) {
        std::vector<std::size_t> translated; // positions within `sub` (1-based)
        for (std::size_t ij : anchors) {
            std::size_t pos = 0;
            for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
                if (blocks[bi] <= ij) pos = bi + 1;
            }
            translated.push_back(pos); // >= 1 because blocks start at 1
        }
        std::vector<std::pair<std::size_t, std::size_t>> windows;
        for (std::size_t j = 0; j + 1 < translated.size(); ++j) {
            if (translated[j + 1] > translated[j])
                windows.emplace_back(translated[j], translated[j + 1] - 1);
            else
                windows.emplace_back(translated[j], translated[j]);
        }
        windows.emplace_back(translated.back(), sub.size());
        osc_long = osc_windows(sub, windows);
    }
    out.parts.osc_long = osc_long;

    double short2 = short_variation(seq, blocks, 2.0);
    Checker chk;
    chk.record("split_variation", v_variation(seq, r),
               out.parts.variation_long + 2.0 * out.parts.variation_short);
    chk.record("split_jump", lambda * std::sqrt(double(jump_count(seq, lambda))),
               9.0 * (short2 + lambda * std::sqrt(double(out.parts.jump_long))));
    chk.record("split_osc", oscillation(seq, anchors), 5.0 * (short2 + osc_long));
    chk.record("split_merged_variation", v_variation(seq, r),
               27.0 * (short2 + out.parts.variation_long));
    chk.record("split_merged_jump", lambda * std::sqrt(double(jump_count(seq, lambda))),
               27.0 * (short2 + lambda / 3.0 * std::sqrt(double(out.parts.jump_long))));
    chk.record("split_merged_osc", oscillation(seq, anchors), 27.0 * (short2 + osc_long));
    out.inequalities = chk.report;
    return out;
}

namespace {

// Nonnegative family lambda[k][n] (1 <= n <= k <= L) with constant row sums
// whose partial sums decrease in k; certifies the transfer bounds.
struct TransferFamily {
    std::vector<std::vector<double>> rows; // rows[k-1][n-1], n <= k
    double total = 0;

    // N_k(t): first n with partial sum > t (1-based).
    std::size_t step_index(std::size_t k, double t) const {
        double acc = 0;
        const auto& row = rows[k - 1];
        for (std::size_t n = 0; n < row.size(); ++n) {
            acc += row[n];
            if (acc > t) return n + 1;
        }
        return row.size();
    }
};

TransferFamily ratio_difference_family(const std::vector<double>& rho) {
    // rho nonincreasing: rows lambda_n^k = rho_n - rho_{n+1} (n < k), rho_k.
    std::size_t L = rho.size();
    TransferFamily fam;
    fam.total = rho[0];
    fam.rows.resize(L);
    for (std::size_t k = 1; k <= L; ++k) {
        fam.rows[k - 1].resize(k);
        for (std::size_t n = 1; n < k; ++n) fam.rows[k - 1][n - 1] = rho[n - 1] - rho[n];
        fam.rows[k - 1][k - 1] = rho[k - 1];
    }
    return fam;
}

TransferFamily flipped_family(const std::vector<double>& rho, double c_tilde) {
    // rho nondecreasing: rows rho_{n+1} - rho_n (n < k), 2*c_tilde - rho_k.
    std::size_t L = rho.size();
    TransferFamily fam;
    fam.total = 2.0 * c_tilde - rho[0];
    fam.rows.resize(L);
    for (std::size_t k = 1; k <= L; ++k) {
        fam.rows[k - 1].resize(k);
        for (std::size_t n = 1; n < k; ++n) fam.rows[k - 1][n - 1] = rho[n] - rho[n - 1];
        fam.rows[k - 1][k - 1] = 2.0 * c_tilde - rho[k - 1];
    }
    return fam;
}

FiniteSeq family_apply(const TransferFamily& fam, const FiniteSeq& b) {
    FiniteSeq out(fam.rows.size());
    for (std::size_t k = 1; k <= fam.rows.size(); ++k) {
        KahanSumComplex acc;
        for (std::size_t n = 0; n < fam.rows[k - 1].size(); ++n)
            acc.add(fam.rows[k - 1][n] * b[n]);
        out[k - 1] = acc.value();
    }
    return out;
}

// Certified bound for mu N_mu^{1/2}(family * b) in terms of jump counts of
// b at the constructed thresholds.
double family_jump_bound(const TransferFamily& fam, const FiniteSeq& b, double mu) {
    double diam = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            diam = std::max(diam, std::abs(b[i] - b[j]));
    double total = 0;
    double Lam = fam.total;
    if (Lam <= 0) return 0;
    for (int j = 0;; ++j) {
        double Dj = std::ldexp(1.0, j) / (10.0 * Lam);
        double threshold = Dj * mu;
        if (threshold > diam || j > 200) break;
        double Cj = 10.0 * Lam * std::pow(3.0, j / 2.0) / std::ldexp(1.0, j);
        total += Cj * Dj * mu * std::sqrt(double(jump_count(b, threshold)));
    }
    return total;
}

// Osc bound over the t-pieces of the family: for each constancy interval of
// t -> (N_{i_1}(t), ..., N_{i_M}(t), N_L(t)) the windowed oscillation of b
// with closed windows, weighted by the interval length.
double family_osc_bound(const TransferFamily& fam, const FiniteSeq& b,
                        const std::vector<std::size_t>& anchors) {
    std::size_t L = fam.rows.size();
    std::vector<double> cuts{0.0, fam.total};
    auto add_row_cuts = [&](std::size_t k) {
        double acc = 0;
        for (double v : fam.rows[k - 1]) {
            acc += v;
            if (acc > 0 && acc < fam.total) cuts.push_back(acc);
        }
    };
    for (std::size_t k : anchors) add_row_cuts(k);
    add_row_cuts(L);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0;
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        double len = cuts[piece + 1] - cuts[piece];
        if (len <= 0) continue;
        double t = 0.5 * (cuts[piece] + cuts[piece + 1]);
        std::vector<std::pair<std::size_t, std::size_t>> windows;
        for (std::size_t j = 0; j < anchors.size(); ++j) {
            std::size_t lo = fam.step_index(anchors[j], t);
            std::size_t hi = j + 1 < anchors.size() ? fam.step_index(anchors[j + 1], t)
                                                    : fam.step_index(L, t);
            windows.emplace_back(lo, std::max(lo, hi));
        }
        total += len * osc_windows(b, windows);
    }
    return total;
}

} // namespace

WeightTransferReport weight_transfer(const std::vector<double>& w,
                                     const std::vector<double>& w_prime, const FiniteSeq& a,
                                     double r, double lambda) {
    std::size_t L = a.size();
    if (L < 2) throw invalid_input_error("weight_transfer: need at least two terms");
    if (w.size() != L || w_prime.size() != L)
        throw invalid_input_error("weight_transfer: weight length mismatch");
    for (std::size_t i = 0; i < L; ++i) {
        if (!(w[i] > 0) || !(w_prime[i] > 0))
            throw invalid_input_error("weight_transfer: weights must be positive");
    }
    if (r <= 2.0) throw invalid_input_error("weight_transfer: r must exceed 2");
    if (lambda <= 0) throw invalid_input_error("weight_transfer: lambda must be positive");

    std::vector<double> ratio(L);
    for (std::size_t i = 0; i < L; ++i) ratio[i] = w_prime[i] / w[i];
    bool nondecreasing = true, nonincreasing = true;
    for (std::size_t i = 1; i < L; ++i) {
        if (ratio[i] < ratio[i - 1] - 1e-15 * std::abs(ratio[i - 1])) nondecreasing = false;
        if (ratio[i] > ratio[i - 1] + 1e-15 * std::abs(ratio[i - 1])) nonincreasing = false;
    }
    if (!nondecreasing && !nonincreasing)
        throw precondition_error("weight_transfer: w'/w must be monotone");

    WeightTransferReport out;
    out.ratio_increasing = nondecreasing;

    // Partial sums of both weighted series.
    FiniteSeq A(L), A_prime(L);
    std::vector<double> W(L), W_prime(L);
    {
        KahanSumComplex accA, accAp;
        KahanSum accW, accWp;
        for (std::size_t i = 0; i < L; ++i) {
            accA.add(w[i] * a[i]);
            accAp.add(w_prime[i] * a[i]);
            accW.add(w[i]);
            accWp.add(w_prime[i]);
            A[i] = accA.value();
            A_prime[i] = accAp.value();
            W[i] = accW.value();
            W_prime[i] = accWp.value();
        }
    }
    double C = 0;
    for (std::size_t i = 0; i < L; ++i)
        C = std::max(C, W[i] * w_prime[i] / (W_prime[i] * w[i]));
    out.ratio_sum_constant = C;

    std::vector<double> rho(L);
    for (std::size_t i = 0; i < L; ++i) rho[i] = w[i] / w_prime[i];

    // Transfer family expressing A in terms of A': direct ratio differences
    // when rho is nonincreasing (w'/w nondecreasing), the 2C-flip otherwise.
    double c_tilde = *std::max_element(rho.begin(), rho.end());
    TransferFamily fam =
        nondecreasing ? ratio_difference_family(rho) : flipped_family(rho, c_tilde);
    out.lambda_total = fam.total;
    out.variation_constant = nondecreasing ? rho[0] : 4.0 * c_tilde - rho[0];

    Checker chk;

    // Family structure: nonnegative entries, constant row sums, partial sums
    // nonincreasing in k.
    for (std::size_t k = 1; k <= L; ++k) {
        double row_sum = 0;
        for (double v : fam.rows[k - 1]) {
            chk.record("family_nonnegative", -v, 0.0);
            row_sum += v;
        }
        chk.record("row_sum_constant", std::abs(row_sum - fam.total),
                   1e-12 * (1.0 + std::abs(fam.total)));
    }
    for (std::size_t N = 1; N <= L; ++N) {
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k <= L; ++k) {
            double partial = 0;
            const auto& row = fam.rows[k - 1];
            for (std::size_t n = 0; n < std::min(N, row.size()); ++n) partial += row[n];
            chk.record("partial_sums_monotone", partial, prev + 1e-12);
            prev = partial;
        }
    }

    // Step-function integral identity, both for the raw data and for the
    // w'-sums: sum_n lambda_n^k b_n = integral of b_{N_k(t)} over [0, total].
    auto integral_identity = [&](const FiniteSeq& b, const std::string& name) {
        for (std::size_t k = 1; k <= L; ++k) {
            KahanSumComplex direct;
            for (std::size_t n = 0; n < fam.rows[k - 1].size(); ++n)
                direct.add(fam.rows[k - 1][n] * b[n]);
            // Independent route: walk the constancy intervals of N_k.
            std::vector<double> cuts{0.0};
            double acc = 0;
            for (double v : fam.rows[k - 1]) {
                acc += v;
                if (acc > cuts.back() && acc < fam.total) cuts.push_back(acc);
            }
            cuts.push_back(fam.total);
            KahanSumComplex integral;
            for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
                double len = cuts[piece + 1] - cuts[piece];
                if (len <= 0) continue;
                double t = 0.5 * (cuts[piece] + cuts[piece + 1]);
                integral.add(len * b[fam.step_index(k, t) - 1]);
            }
            chk.record(name, std::abs(direct.value() - integral.value()),
                       1e-9 * (1.0 + std::abs(direct.value())));
        }
    };
    integral_identity(a, "integral_identity_data");
    integral_identity(A_prime, "integral_identity_sums");

    // Representation check: A_k = family * A'  (or the flipped identity).
    FiniteSeq applied = family_apply(fam, A_prime);
    for (std::size_t k = 0; k < L; ++k) {
        cplx expect = nondecreasing ? A[k] : 2.0 * c_tilde * A_prime[k] - A[k];
        chk.record("representation_identity", std::abs(applied[k] - expect),
                   1e-9 * (1.0 + std::abs(expect)));
    }

    auto anchors = dyadic_ladder(L);

    // Transfer inequalities with the constructed constants.
    double var_A = v_variation(A, r);
    double var_Ap = v_variation(A_prime, r);
    chk.record("transfer_variation", var_A, out.variation_constant * var_Ap);

    double jump_lhs = lambda * std::sqrt(double(jump_count(A, lambda)));
    double jump_rhs;
    if (nondecreasing) {
        jump_rhs = family_jump_bound(fam, A_prime, lambda);
    } else {
        FiniteSeq scaled(L);
        for (std::size_t i = 0; i < L; ++i) scaled[i] = 2.0 * c_tilde * A_prime[i];
        jump_rhs = lambda * std::sqrt(double(jump_count(scaled, lambda / 2))) +
                   2.0 * family_jump_bound(fam, A_prime, lambda / 2);
    }
    chk.record("transfer_jump", jump_lhs, jump_rhs);

    double osc_lhs = oscillation(A, anchors);
    double osc_rhs = family_osc_bound(fam, A_prime, anchors);
    if (!nondecreasing) osc_rhs += 2.0 * c_tilde * oscillation(A_prime, anchors);
    chk.record("transfer_oscillation", osc_lhs, osc_rhs);

    out.checks = chk.report;
    return out;
}

} // namespace normform
