#pragma once

#include <string>
#include <vector>

#include "normform/numeric.hpp"

namespace normform {

using FiniteSeq = std::vector<cplx>;

// r/(r-2) for the r-variation, 1 for oscillation and jump counting.
inline double variation_r_factor(double r) {
    if (r <= 2.0) throw invalid_input_error("variation_r_factor: r must exceed 2");
    return r / (r - 2.0);
}

// r-variation: sup over increasing index chains of
// (sum |f_{n_i} - f_{n_{i-1}}|^r)^(1/r). Exact maximum by dynamic
// programming over the last chosen index, O(L^2). Requires r >= 1.
double v_variation(const FiniteSeq& seq, double r);

// Oscillation along the anchor list I (1-based, strictly increasing):
// (sum_j sup_{i in [I_j, I_{j+1})} |f_i - f_{I_j}|^2)^(1/2), where the last
// window runs to the end of the sequence. A single anchor yields 0.
double oscillation(const FiniteSeq& seq, const std::vector<std::size_t>& anchors);

// Largest j admitting a chain n_0 < ... < n_j with every consecutive gap
// |f_{n_i} - f_{n_{i-1}}| > lambda. Exact forward chain DP, O(L^2). An
// anchored greedy scan undercounts here (points inside the anchor's
// lambda-disk can be pairwise separated), so the DP is the production path.
u64 jump_count(const FiniteSeq& seq, double lambda);

// Independent route: backward DP over chains starting at each index.
u64 jump_count_dp(const FiniteSeq& seq, double lambda);

struct InequalityResult {
    std::string name;
    u64 checked = 0;
    u64 violations = 0;
    double max_slack = 0; // most positive (lhs - rhs) observed
};

struct InequalityReport {
    std::vector<InequalityResult> results;
    bool all_hold(double tol = 1e-9) const;
};

struct SuiteSpec {
    std::vector<double> variation_orders = {2.5, 3.0, 4.0}; // r > 2
    std::vector<double> jump_levels = {0.25, 0.5, 1.0};
    std::vector<std::size_t> anchors; // for Osc; empty = a default ladder
};

// Per-sequence pointwise inequalities: domination of Osc, V^r (r>2) and
// lambda N^(1/2) by V^2; the dyadic-block bound for V^2 when L = 2^m; the
// quasi-triangle inequalities. Pass a second sequence for the two-argument
// checks (defaults to the reversed sequence).
InequalityReport inequality_suite(const FiniteSeq& seq, const SuiteSpec& spec = {});
InequalityReport inequality_suite(const FiniteSeq& seq, const FiniteSeq& other,
                                  const SuiteSpec& spec);

struct LongShortParts {
    double variation_long = 0;  // V^{r,L}_A
    double variation_short = 0; // V^{r,S}_A
    double osc_long = 0;        // Osc^L_{I,A}
    u64 jump_long = 0;          // N^L_{lambda/3, A}
};

// Long/short decomposition along the block anchors A (1-based, strictly
// increasing, A_1 = 1) and the four splitting inequalities with constants
// 2, 9, 5 and 27.
struct LongShortReport {
    LongShortParts parts;
    InequalityReport inequalities;
};

LongShortReport long_short_split(const FiniteSeq& seq, const std::vector<std::size_t>& blocks,
                                 double r, double lambda, const std::vector<std::size_t>& anchors);

struct WeightTransferReport {
    bool ratio_increasing = false; // w'/w case selector
    double ratio_sum_constant = 0;     // C = sup_N W_N w'_N / (W'_N w_N), nondecreasing-ratio case
    double lambda_total = 0;       // constant value of sum_n lambda_n^k
    double variation_constant = 0; // constructed constant in the V^r transfer
    InequalityReport checks;
};

// Weight transference: builds the lambda_n^k family from (w, w'),
// verifies that its row sums are constant, that k -> partial sums decrease,
// the step-function integral identity, and the three transfer inequalities
// with the constructed (C_j, D_j, I_j) data. Requires positive weights with
// monotone ratio.
WeightTransferReport weight_transfer(const std::vector<double>& w, const std::vector<double>& w_prime,
                                     const FiniteSeq& a, double r = 3.0, double lambda = 0.5);

} // namespace normform
