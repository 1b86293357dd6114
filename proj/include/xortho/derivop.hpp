#pragma once
#include <vector>

#include "ratfn.hpp"

namespace xortho {

// Differential operator sum_i c_i(x) * d^i/dx^i with rational-function
// coefficients, stored densely by derivative order.
struct DerivOp {
    std::vector<RationalFn> coeffs;  // coeffs[i] multiplies the i-th derivative

    static DerivOp identity() {
        DerivOp op;
        op.coeffs = {RationalFn::one()};
        return op;
    }

    RationalFn coeff(std::size_t order) const {
        return order < coeffs.size() ? coeffs[order] : RationalFn::zero();
    }

    void set(std::size_t order, RationalFn c) {
        if (coeffs.size() <= order) coeffs.resize(order + 1, RationalFn::zero());
        coeffs[order] = std::move(c);
    }

    std::size_t order() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (!coeffs[i].is_zero()) return i;
        return 0;
    }

    DerivOp operator+(const DerivOp& o) const {
        DerivOp out = *this;
        for (std::size_t i = 0; i < o.coeffs.size(); ++i)
            out.set(i, out.coeff(i) + o.coeffs[i]);
        return out;
    }
    DerivOp operator-(const DerivOp& o) const {
        DerivOp out = *this;
        for (std::size_t i = 0; i < o.coeffs.size(); ++i)
            out.set(i, out.coeff(i) - o.coeffs[i]);
        return out;
    }
    DerivOp operator*(const RationalFn& s) const {
        DerivOp out;
        for (std::size_t i = 0; i < coeffs.size(); ++i) out.set(i, coeffs[i] * s);
        return out;
    }

    RationalFn apply(const MultiPoly& p) const {
        RationalFn out = RationalFn::zero();
        MultiPoly d = p;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (!coeffs[i].is_zero()) out = out + coeffs[i] * RationalFn(d);
            d = d.derivative(Var::x);
        }
        return out;
    }

    // Composition (this o other) by Leibniz expansion: each c_i d^i applied
    // to other's coefficient-times-derivative terms. Coefficients are
    // differentiated i-choose-m times and the derivative orders add.
    DerivOp compose(const DerivOp& other) const {
        DerivOp out;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            for (std::size_t j = 0; j < other.coeffs.size(); ++j) {
                if (other.coeffs[j].is_zero()) continue;
                // d^i (b_j f^{(j)}) = sum_m C(i,m) b_j^{(i-m)} f^{(j+m)}
                RationalFn bder = other.coeffs[j];
                std::vector<RationalFn> ders(i + 1, RationalFn::zero());
                for (std::size_t t = 0; t <= i; ++t) {
                    ders[t] = bder;
                    if (t < i) bder = bder.derivative_x();
                }
                Rat binom = 1;
                for (std::size_t m = 0; m <= i; ++m) {
                    if (m > 0) binom = binom * Rat(static_cast<long>(i - m + 1)) / Rat(static_cast<long>(m));
                    RationalFn term = coeffs[i] * ders[i - m] * RationalFn::constant(binom);
                    out.set(j + m, out.coeff(j + m) + term);
                }
            }
        }
        return out;
    }

    bool operator==(const DerivOp& o) const {
        std::size_t n = std::max(coeffs.size(), o.coeffs.size());
        for (std::size_t i = 0; i < n; ++i)
            if (!(coeff(i) == o.coeff(i))) return false;
        return true;
    }
};

}  // namespace xortho
