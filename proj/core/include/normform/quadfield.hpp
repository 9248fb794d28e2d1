#pragma once

#include "normform/numeric.hpp"

namespace normform {

// All constants attached to the imaginary quadratic field Q(sqrt(-n)).
// Immutable after build_field; safe to share across threads.
struct QuadField {
    i64 n = 0;            // the defining parameter of the norm form u^2 + n v^2
    i64 a = 0;            // squarefree part, n = a * b^2
    i64 b = 0;            // squareful part
    i64 n0 = 0;           // 2b if a = 3 (mod 4), else b
    int omega_trace = 0;  // t in {0,1}; omega satisfies omega^2 = t*omega - omega_norm
    i64 omega_norm = 0;   // mu_omega: (1+a)/4 if a = 3 (mod 4), else a
    i64 disc = 0;         // field discriminant: -a or -4a, always t^2 - 4*mu
    i64 class_number = 0; // number of reduced forms of discriminant disc
    i64 rn = 0;           // 2 * class_number
};

QuadField build_field(i64 n);

// N(u + v*omega) = u^2 + t*u*v + mu*v^2. Nonnegative, zero only at (0,0).
// Throws overflow_error if the exact value does not fit the 64-bit result.
u64 norm_form(const QuadField& field, i64 u, i64 v);

// Number of reduced primitive binary quadratic forms (A,B,C) with
// B^2 - 4AC = disc, |B| <= A <= C, and B >= 0 when |B| = A or A = C.
// Requires disc < 0 and disc = 0 or 1 (mod 4).
i64 class_number(i64 disc);

} // namespace normform
