#pragma once

#include <gmpxx.h>

#include <string>

namespace jetbrane {

// Exact arbitrary-precision rational coefficients. All kernel arithmetic is
// exact; there is no floating point anywhere in the engine.
using Rational = mpq_class;

/// Canonicalized rational from an integer pair.
inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Renders as "n" or "n/d" with a leading '-' for negatives.
inline std::string to_string(const Rational& r) {
    return r.get_str();
}

inline bool is_zero(const Rational& r) {
    return sgn(r) == 0;
}

}  // namespace jetbrane
