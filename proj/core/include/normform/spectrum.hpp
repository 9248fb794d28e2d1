#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "normform/expsums.hpp"
#include "normform/normprimes.hpp"

namespace normform {

// Even C^2 bump with phi = 1 on |b| <= 1/4, phi = 0 on |b| >= 1/2, and a
// monotone quintic transition in between. Sandwiched between the
// indicators of [-1/4,1/4] and [-1/2,1/2].
double mollifier(double beta);
// phi_s(beta) = phi(2^s beta).
double mollifier_scaled(int s, double beta);

// Best rational approximation to alpha (mod 1) with denominator <= q_bound,
// by continued fractions. Distance measured on the torus.
struct NearestFraction {
    ReducedFraction frac;
    double distance = 0; // |alpha - a/q| on the torus
};
NearestFraction nearest_fraction(double alpha, i64 q_bound);

// Major/minor arc classification at scale x with exponent B: alpha is major
// when some a/q with q <= (log x)^B lies within (log x)^B / x^d.
struct ArcSpec {
    u64 x = 0;
    double B = 2.0;
    int degree = 1;

    i64 denominator_bound() const;
    double radius() const;
    // The center fraction when alpha is major, empty when minor.
    std::optional<ReducedFraction> classify(double alpha) const;
};

// v_m(alpha) = int_0^1 e(alpha P(m u)) du by adaptive quadrature with
// absolute error <= 1e-10. v_m(0) = 1 exactly.
cplx oscillatory_integral(const IntPolynomial& poly, double m, double alpha);

// K_m transform: (1/m) sum over members p <= m of log p * e(alpha P(p)).
// Compensated summation; phases reduced mod 1 in 128-bit fixed point.
cplx kernel_transform(const PnSieve& sieve, const IntPolynomial& poly, u64 m, double alpha);

// K_m transform on the uniform grid alpha = j/grid, all points at once. On
// the grid the phase depends only on P(p) mod grid, so the log weights are
// binned by residue first; agrees with kernel_transform to ~1e-12.
std::vector<cplx> kernel_transform_grid(const PnSieve& sieve, const IntPolynomial& poly, u64 m,
                                        u64 grid_size);

// Shared memo for S(a,q)/(R_n phi2(q0)) lookups during grid scans.
class CoefficientCache {
  public:
    CoefficientCache(const QuadField& field, const IntPolynomial& poly)
        : field_(field), poly_(poly) {}
    cplx get(const ReducedFraction& frac) const;
    const QuadField& field() const { return field_; }
    const IntPolynomial& poly() const { return poly_; }

  private:
    const QuadField& field_;
    IntPolynomial poly_;
    mutable std::mutex mutex_;
    mutable std::map<ReducedFraction, cplx> memo_;
};

// One dyadic block of the approximant: the unique fraction a/q with
// q in [2^(s-1), 2^s) whose mollifier window phi_{6s} covers alpha, if any.
cplx approximant_block(const CoefficientCache& cache, u64 m, int s, double alpha);

// Approximant transform: blocks with 2^s <= (log m)^B. Requires m >= 16.
cplx approximant_transform(const CoefficientCache& cache, u64 m, double B, double alpha);

// Wide variant: blocks with 2^s <= sqrt(m)/16.
cplx approximant_transform_wide(const CoefficientCache& cache, u64 m, double alpha);

struct MajorArcResidual {
    cplx lhs;  // sum over members <= x of e(alpha P(p)) log p
    cplx main; // x * coefficient(a,q) * v_x(alpha - a/q)
    double residual_over_x = 0;
};

// Requires alpha inside the major arc of frac at scale (x, B).
MajorArcResidual major_arc_residual(const PnSieve& sieve, const QuadField& field,
                                    const IntPolynomial& poly, u64 x,
                                    const ReducedFraction& frac, double alpha, double B = 2.0);

struct MinorArcRow {
    double alpha = 0;
    u64 x = 0;
    double value = 0; // |sum of Lambda(p^k) e(alpha P(p^k))| / x over members
    bool major = false;
    ReducedFraction major_center;
};

// Prime powers p^k <= x of members contribute log p at argument P(p^k).
// Rows flagged major are reported, not errored.
std::vector<MinorArcRow> minor_arc_scan(const PnSieve& sieve, const IntPolynomial& poly,
                                        const std::vector<double>& alphas,
                                        const std::vector<u64>& xs, double B = 2.0);

struct SupErrorScan {
    double sup_err = 0;
    double argmax_alpha = 0;
    std::vector<double> errors; // per grid point
};

// Max of |kernel_transform - approximant_transform| over alpha = j / grid.
SupErrorScan sup_error_scan(const PnSieve& sieve, const QuadField& field,
                            const IntPolynomial& poly, u64 m, double B, u64 grid_size);

// Ionescu-Wainger frequency machinery.
struct IWConfig {
    double rho = 0.5;
    u64 N = 0;        // must satisfy N >= 2^R with R = floor(2/rho) + 1
    u64 q_cap = 0;    // denominator cap for enumeration (0 = unset)

    int R() const { return int(2.0 / rho) + 1; }
};

// S_rho(N): the product of p^floor(log N/log p) over primes p <= N^(rho/2),
// together with p^floor(log N/log p) for each prime p in (N^(rho/2), N].
std::vector<u64> iw_base_set(const IWConfig& cfg);

// Membership of q in the denominator set of Sigma_{<=R}(N): q must factor
// as a product of at most R coprime blocks, each dividing one element of
// S_rho(N).
bool iw_denominator_member(const IWConfig& cfg, u64 q);

// All fractions a/q with gcd(a,q) = 1, a <= q <= q_cap and q admissible.
std::vector<ReducedFraction> iw_frequencies(const IWConfig& cfg);

// Smallest dyadic N >= 2^R with frac in Sigma_{<=R}(N).
u64 iw_height(double rho, const ReducedFraction& frac);

} // namespace normform
