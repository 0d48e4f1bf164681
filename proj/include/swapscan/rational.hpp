// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "swapscan/errors.hpp"

namespace swapscan {

using Int128 = __int128;

// Exact rational over int64, always kept normalized (den > 0, gcd == 1).
// Amount filters are exact-arithmetic predicates, so no floating point
// enters any comparison path.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    constexpr void normalize() {
        if (den == 0) {
            throw Error(Errc::corpus, "zero_denominator", "rational with zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    constexpr bool is_integer() const { return den == 1; }
    constexpr bool positive() const { return num > 0; }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;
};

// Reduce an int128 pair down to an int64 rational. Values seen here stay
// far below the int64 range after reduction; overflow past it indicates a
// corrupt input, not a representable amount.
inline Rational make_rational(Int128 num, Int128 den) {
    if (den == 0) raise(Errc::corpus, "zero_denominator", "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int128 a = num < 0 ? -num : num;
    Int128 b = den;
    while (b != 0) {
        const Int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr Int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr Int128 hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) {
        raise(Errc::internal, "rational_overflow", "reduced rational exceeds 64-bit range");
    }
    Rational r;
    r.num = static_cast<std::int64_t>(num);
    r.den = static_cast<std::int64_t>(den);
    if (r.num == 0) r.den = 1;
    return r;
}

inline Rational mul(const Rational& a, const Rational& b) {
    return make_rational(Int128(a.num) * b.num, Int128(a.den) * b.den);
}

inline Rational div(const Rational& a, const Rational& b) {
    if (b.num == 0) raise(Errc::corpus, "division_by_zero", "rational division by zero");
    return make_rational(Int128(a.num) * b.den, Int128(a.den) * b.num);
}

// Three-way compare; cross products fit in int128 for all int64 operands.
inline int cmp(const Rational& a, const Rational& b) {
    const Int128 lhs = Int128(a.num) * b.den;
    const Int128 rhs = Int128(b.num) * a.den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }

constexpr std::int64_t pow10_i64(int d) {
    std::int64_t p = 1;
    for (int i = 0; i < d; ++i) p *= 10;
    return p;
}

constexpr Int128 floor_div(Int128 a, Int128 b) {
    Int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr Int128 ceil_div(Int128 a, Int128 b) {
    Int128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

inline std::string to_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace swapscan
