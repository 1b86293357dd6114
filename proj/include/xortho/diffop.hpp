#pragma once
#include <map>

#include "ratfn.hpp"

namespace xortho {

// Difference operator sum_j c_j(x) * Sh_j where Sh_j(f)(x) = f(x + j) and
// the coefficients c_j are rational functions of x (possibly involving N
// symbolically). Stored sparsely by shift offset.
struct DiffOp {
    std::map<long, RationalFn> coeffs;

    static DiffOp identity() {
        DiffOp op;
        op.coeffs[0] = RationalFn::one();
        return op;
    }

    void set(long shift, RationalFn c) {
        if (c.is_zero()) coeffs.erase(shift);
        else coeffs[shift] = std::move(c);
    }

    RationalFn coeff(long shift) const {
        auto it = coeffs.find(shift);
        return it == coeffs.end() ? RationalFn::zero() : it->second;
    }

    DiffOp operator+(const DiffOp& o) const {
        DiffOp out = *this;
        for (const auto& [j, c] : o.coeffs) out.set(j, out.coeff(j) + c);
        return out;
    }
    DiffOp operator-(const DiffOp& o) const {
        DiffOp out = *this;
        for (const auto& [j, c] : o.coeffs) out.set(j, out.coeff(j) - c);
        return out;
    }
    DiffOp operator*(const RationalFn& s) const {
        DiffOp out;
        for (const auto& [j, c] : coeffs) out.set(j, c * s);
        return out;
    }

    // Applies the operator to a polynomial in x; the result is rational.
    RationalFn apply(const MultiPoly& p) const {
        RationalFn out = RationalFn::zero();
        for (const auto& [j, c] : coeffs) {
            MultiPoly shifted = p.subst(Var::x, var_x() + MultiPoly::constant(Rat(j)));
            out = out + c * RationalFn(shifted);
        }
        return out;
    }

    // Operator composition: (this o other)(f) = this(other(f)). The inner
    // coefficients pick up the outer shift before offsets add.
    DiffOp compose(const DiffOp& other) const {
        DiffOp out;
        for (const auto& [j, cj] : coeffs)
            for (const auto& [i, ci] : other.coeffs)
                out.set(i + j, out.coeff(i + j) + cj * ci.shift_x(j));
        return out;
    }

    bool operator==(const DiffOp& o) const {
        for (const auto& [j, c] : coeffs)
            if (!(c == o.coeff(j))) return false;
        for (const auto& [j, c] : o.coeffs)
            if (!(coeff(j) == c)) return false;
        return true;
    }
};

}  // namespace xortho
