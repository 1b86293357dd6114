#pragma once
#include "multipoly.hpp"

namespace xortho {

// Quotient of two multivariate polynomials. No gcd reduction is attempted:
// equality, arithmetic, and evaluation all work by cross-multiplication, so
// a RationalFn is a formal fraction whose denominator must be nonzero.
struct RationalFn {
    MultiPoly num;
    MultiPoly den;

    RationalFn() : num(MultiPoly::zero()), den(MultiPoly::one()) {}
    explicit RationalFn(MultiPoly n) : num(std::move(n)), den(MultiPoly::one()) {}
    RationalFn(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw ParamViolation("rational function with zero denominator");
    }

    static RationalFn zero() { return RationalFn(); }
    static RationalFn one() { return RationalFn(MultiPoly::one()); }
    static RationalFn constant(const Rat& c) { return RationalFn(MultiPoly::constant(c)); }

    bool is_zero() const { return num.is_zero(); }

    RationalFn operator+(const RationalFn& o) const {
        return RationalFn(num * o.den + o.num * den, den * o.den);
    }
    RationalFn operator-(const RationalFn& o) const {
        return RationalFn(num * o.den - o.num * den, den * o.den);
    }
    RationalFn operator*(const RationalFn& o) const {
        return RationalFn(num * o.num, den * o.den);
    }
    RationalFn operator/(const RationalFn& o) const {
        if (o.num.is_zero()) throw ParamViolation("division by zero rational function");
        return RationalFn(num * o.den, den * o.num);
    }
    RationalFn operator-() const { return RationalFn(-num, den); }

    bool operator==(const RationalFn& o) const {
        return (num * o.den - o.num * den).is_zero();
    }

    // Substitutes x -> x + shift in both numerator and denominator.
    RationalFn shift_x(long shift) const {
        MultiPoly xs = var_x() + MultiPoly::constant(Rat(shift));
        return RationalFn(num.subst(Var::x, xs), den.subst(Var::x, xs));
    }

    // d/dx via the quotient rule; the result keeps the squared denominator.
    RationalFn derivative_x() const {
        return RationalFn(num.derivative(Var::x) * den - num * den.derivative(Var::x),
                          den * den);
    }

    // Exact evaluation; throws ParamPole when the denominator vanishes.
    Rat eval_x(const Rat& x) const {
        Rat d = den.eval_x(x);
        if (d == 0) throw ParamPole("rational function pole at x = " + to_string(x));
        return num.eval_x(x) / d;
    }

    // Returns the polynomial num/den when the division is exact.
    MultiPoly as_poly() const { return exact_div(num, den); }

    std::string str() const {
        if (den.is_constant() && den.constant_value() == 1) return num.str();
        return "(" + num.str() + ") / (" + den.str() + ")";
    }
};

}  // namespace xortho
