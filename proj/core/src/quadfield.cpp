#include "normform/quadfield.hpp"

#include <limits>
#include <numeric>

namespace normform {

QuadField build_field(i64 n) {
    if (n <= 0) throw invalid_input_error("build_field: n must be a positive integer");
    QuadField f;
    f.n = n;
    // Squarefree/squareful split by trial division.
    f.a = 1;
    f.b = 1;
    i64 rest = n;
    for (i64 p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) f.b *= p;
        if (e % 2) f.a *= p;
    }
    f.a *= rest;

    if (f.a % 4 == 3) {
        f.n0 = 2 * f.b;
        f.omega_trace = 1;
        f.omega_norm = (1 + f.a) / 4;
        f.disc = -f.a;
    } else {
        f.n0 = f.b;
        f.omega_trace = 0;
        f.omega_norm = f.a;
        f.disc = -4 * f.a;
    }
    f.class_number = class_number(f.disc);
    f.rn = 2 * f.class_number;
    return f;
}

u64 norm_form(const QuadField& field, i64 u, i64 v) {
    i128 uu = i128(u) * u;
    i128 uv = i128(field.omega_trace) * u * v;
    i128 vv = i128(field.omega_norm) * v * v;
    i128 value = uu + uv + vv;
    if (value < 0 || value > i128(std::numeric_limits<i64>::max()))
        throw overflow_error("norm_form: value exceeds 64-bit range");
    return static_cast<u64>(value);
}

i64 class_number(i64 disc) {
    if (disc >= 0) throw invalid_input_error("class_number: discriminant must be negative");
    i64 mod = ((disc % 4) + 4) % 4;
    if (mod != 0 && mod != 1)
        throw invalid_input_error("class_number: discriminant must be 0 or 1 mod 4");
    i64 count = 0;
    // |B| <= A <= C and B^2 - 4AC = disc force A <= sqrt(|disc|/3).
    for (i64 A = 1; 3 * A * A <= -disc; ++A) {
        for (i64 B = -A; B <= A; ++B) {
            i64 num = B * B - disc;
            if (num % (4 * A)) continue;
            i64 C = num / (4 * A);
            if (C < A) continue;
            if ((B < 0) && (B == -A || A == C)) continue;
            if (std::gcd(std::gcd(A, std::abs(B)), C) != 1) continue;
            ++count;
        }
    }
    return count;
}

} // namespace normform
