#pragma once

#include <functional>
#include <map>
#include <vector>

#include "normform/expsums.hpp"
#include "normform/normprimes.hpp"

namespace normform {

// Finitely supported map from the integers to complex values. Lookups
// outside the support return 0.
class Signal {
  public:
    Signal() = default;
    explicit Signal(std::map<i64, cplx> atoms);

    cplx at(i64 x) const;
    void set(i64 x, cplx value); // value 0 erases
    const std::map<i64, cplx>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t support_size() const { return atoms_.size(); }
    i64 support_min() const;
    i64 support_max() const;
    double mass() const; // sum of values, real part

    friend Signal reflect(const Signal& f); // x -> f(-x)

  private:
    std::map<i64, cplx> atoms_;
};

// Desk-scale measure-preserving systems. The integer shift maps
// T^k x = x - k; the cyclic rotation on Z_N with step c maps
// T^k x = x - k c mod N.
struct ToySystem {
    enum class Kind { integer_shift, cyclic };
    Kind kind = Kind::integer_shift;
    i64 modulus = 0; // cyclic only
    i64 step = 1;    // cyclic only

    static ToySystem shift() { return {Kind::integer_shift, 0, 1}; }
    static ToySystem cyclic(i64 N, i64 c);

    i64 apply(i64 x, i128 k) const; // T^k x
};

// Averaging kernel in physical space: mass log(p)/m at P(p) for members
// p <= m. Total mass equals weighted_count(m)/m.
Signal kernel(const PnSieve& sieve, const IntPolynomial& poly, u64 m);

enum class Weighting { unweighted, log_weighted };

// A_m f(x) = (1/|P_n cap [m]|) sum f(T^{P(p)} x)         (unweighted)
// A'_m f(x) = (1/m) sum log p f(T^{P(p)} x)               (log weighted)
// The unweighted average over an empty member set is a typed error; the
// weighted one is 0.
cplx ergodic_avg(const PnSieve& sieve, const IntPolynomial& poly, u64 m, const ToySystem& sys,
                 const std::function<cplx(i64)>& f, i64 x, Weighting weighting);

struct AvgSequence {
    std::vector<u64> scales;
    std::vector<cplx> unweighted;
    std::vector<cplx> weighted;
};

// Both normalizations of the average sequence across increasing scales.
AvgSequence avg_sequence(const PnSieve& sieve, const IntPolynomial& poly, const ToySystem& sys,
                         const std::function<cplx(i64)>& f, i64 x,
                         const std::vector<u64>& scales);

// Kernel-signal correlation (K (*) f)(x) = sum_y K(y) f(x + y): the fixed
// orientation for this module. With this convention
// A'_m f(x) = (K_m (*) reflect(f))(-x).
Signal kernel_correlate(const Signal& kern, const Signal& f);

struct MaximalConfig {
    u64 direct_limit = 100'000'000; // |support| * members budget for the direct path
    std::size_t fft_limit = std::size_t(1) << 26;
};

// Pointwise sup over dyadic m <= M of |K_m (*) f|.
Signal maximal_fn(const PnSieve& sieve, const IntPolynomial& poly, const Signal& f, u64 M,
                  const MaximalConfig& cfg = {});

} // namespace normform
