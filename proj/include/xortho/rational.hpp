#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "xortho/errors.hpp"

namespace xortho {

// Exact rational scalar. Always stored reduced with positive denominator;
// zero is 0/1. cpp_rational maintains these invariants on every operation.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Parses "p" or "p/q" with optional leading sign. Decimal notation is
// rejected so no input silently loses precision.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParamViolation("empty rational literal");
    if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
        text.find('E') != std::string::npos) {
        throw ParamViolation("decimal notation rejected, use p/q: '" + text + "'");
    }
    try {
        Rat r(text);
        return r;
    } catch (const std::exception&) {
        throw ParamViolation("unparsable rational literal: '" + text + "'");
    }
}

inline std::string to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

// r^e for integer e; negative e inverts, so r must be nonzero then.
inline Rat pow_rat(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    bool invert = e < 0;
    unsigned long m = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat acc(1), base(r);
    while (m != 0) {
        if (m & 1UL) acc *= base;
        base *= base;
        m >>= 1UL;
    }
    if (invert) {
        if (acc == 0) throw ParamPole("0 raised to a negative power");
        return Rat(1) / acc;
    }
    return acc;
}

// Rising factorial (a)_j. Negative j uses the reflection
// (a)_{-m} = 1 / (a-m)_m, which requires (a-m)_m to be nonzero.
inline Rat poch_rat(const Rat& a, long j) {
    if (j >= 0) {
        Rat acc(1);
        for (long i = 0; i < j; ++i) acc *= (a + i);
        return acc;
    }
    long m = -j;
    Rat acc(1);
    for (long i = 0; i < m; ++i) acc *= (a - m + i);
    if (acc == 0) throw ParamPole("reflected Pochhammer (a)_{-m} with vanishing (a-m)_m");
    return Rat(1) / acc;
}

inline Rat factorial_rat(long n) {
    if (n < 0) throw ParamViolation("factorial of negative integer");
    Rat acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// Generalized binomial coefficient with rational top: binom(u, m) for
// integer m >= 0 equals (u-m+1)_m / m!; m < 0 yields 0.
inline Rat binom_rat(const Rat& u, long m) {
    if (m < 0) return Rat(0);
    return poch_rat(u - m + 1, m) / factorial_rat(m);
}

// Exact floor of a rational.
inline Int floor_rat(const Rat& r) {
    Int n = num(r), d = den(r);
    Int q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// True when r is an integer in [lo, hi]; the usual guard for excluded
// negative-integer parameter ranges.
inline bool is_integer_in(const Rat& r, long lo, long hi) {
    if (!is_integer(r)) return false;
    return num(r) >= lo && num(r) <= hi;
}

inline int sign_rat(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

}  // namespace xortho
