#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "xortho/errors.hpp"
#include "xortho/rational.hpp"

namespace xortho {

// 50-decimal-digit float; the only non-exact scalar type in the library.
using Float50 = boost::multiprecision::cpp_bin_float_50;

inline Float50 to_float50(const Rat& r) {
    return Float50(num(r)) / Float50(den(r));
}

// Exact sign of the gamma function at a rational argument: +1 on the
// positive axis, alternating by unit interval on the negative axis
// (sign is (-1)^m on (-m, -m+1)), pole at the nonpositive integers.
inline int gamma_sign(const Rat& x) {
    if (is_integer(x) && num(x) <= 0)
        throw GammaPole("gamma argument " + to_string(x) + " is a nonpositive integer");
    if (x > 0) return 1;
    long m = -static_cast<long>(floor_rat(x));
    return m % 2 == 0 ? 1 : -1;
}

// Gamma value at a rational argument. Nonpositive arguments are lifted
// into the positive axis through Gamma(x) = Gamma(x+m) / (x)_m with the
// rising factorial accumulated exactly.
inline Float50 gamma_value(const Rat& x) {
    if (is_integer(x) && num(x) <= 0)
        throw GammaPole("gamma argument " + to_string(x) + " is a nonpositive integer");
    Rat y = x;
    Rat rising(1);
    while (y <= 0) {
        rising *= y;
        y += 1;
    }
    return boost::math::tgamma(to_float50(y)) / to_float50(rising);
}

}  // namespace xortho
