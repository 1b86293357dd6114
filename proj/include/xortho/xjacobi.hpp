#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xortho/classical.hpp"
#include "xortho/derivop.hpp"
#include "xortho/gammafn.hpp"
#include "xortho/linalg.hpp"
#include "xortho/quadrature.hpp"
#include "xortho/sturm.hpp"
#include "xortho/xhahn.hpp"

namespace xortho {
namespace detail {

// Derivative ladder row of the continuous family: entry at 1-based column
// j is (-1)^{j-1} times the (j-1)-th derivative of the degree-m member.
inline std::vector<MultiPoly> jacobi_ladder_row(long m, long width, const JacobiParams& p) {
    std::vector<MultiPoly> row;
    row.reserve(static_cast<std::size_t>(width));
    MultiPoly d = jacobi(m, p.alpha, p.beta);
    Rat sign(1);
    for (long j = 1; j <= width; ++j) {
        row.push_back(d * MultiPoly::constant(sign));
        d = d.derivative(Var::x);
        sign = -sign;
    }
    return row;
}

// Second-component row: entry at column j carries shifted parameters and
// a power of (1+x) decreasing with the column.
inline std::vector<MultiPoly> jacobi_shifted_row(long f, long width, const JacobiParams& p) {
    std::vector<MultiPoly> row;
    row.reserve(static_cast<std::size_t>(width));
    MultiPoly xp1 = var_x() + MultiPoly::one();
    for (long j = 1; j <= width; ++j) {
        Rat pref = poch_rat(p.beta - Rat(f), j - 1);
        row.push_back(MultiPoly::constant(pref) *
                      xp1.pow(static_cast<unsigned>(width - j)) *
                      jacobi(f, p.alpha + Rat(j - 1), -p.beta - Rat(j - 1)));
    }
    return row;
}

// Assembles the determinant rows over `width` columns: an optional leading
// derivative-ladder row of degree `top`, one ladder row per element of the
// first component, one shifted row per element of the second.
inline PolyMatrix jacobi_det_matrix(std::optional<long> top, long width,
                                    const JacobiParams& p, const PairF& F) {
    PolyMatrix m;
    if (top) m.push_back(jacobi_ladder_row(*top, width, p));
    for (long f : F.f1) m.push_back(jacobi_ladder_row(f, width, p));
    for (long f : F.f2) m.push_back(jacobi_shifted_row(f, width, p));
    return m;
}

// Common denominator of the divided determinants.
inline MultiPoly jacobi_det_denominator(const PairF& F) {
    const long k2 = static_cast<long>(F.k2());
    return (var_x() + MultiPoly::one()).pow(static_cast<unsigned>(k2 * (k2 - 1)));
}

inline std::vector<Float50> f50_coeffs(const MultiPoly& p) {
    std::vector<Rat> c = uni_coeffs(p);
    std::vector<Float50> out;
    out.reserve(c.size());
    for (const Rat& v : c) out.push_back(to_float50(v));
    return out;
}

inline Float50 f50_eval(const std::vector<Float50>& c, const Float50& t) {
    Float50 acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

}  // namespace detail

// Degree-n member attached to the pair F: a bordered (k+1)x(k+1)
// Wronskian-type determinant divided by a power of (1+x). Returns the
// zero polynomial for n outside the index set.
inline MultiPoly x_jacobi(long n, const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    if (n < 0 || !sigma_contains(F, n)) return MultiPoly::zero();
    const long k = static_cast<long>(F.k());
    PolyMatrix m = detail::jacobi_det_matrix(n - u_of(F), k + 1, p, F);
    return exact_div(det_poly(std::move(m)), detail::jacobi_det_denominator(F));
}

// Same polynomial with every derivative entry replaced by its closed form
// in shifted parameters: the (j-1)-th derivative of the degree-m member is
// (m+alpha+beta+1)_{j-1} / 2^{j-1} times the degree m-j+1 member at
// parameters raised by j-1. Independent cross-check of x_jacobi.
inline MultiPoly x_jacobi_alt(long n, const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    if (n < 0 || !sigma_contains(F, n)) return MultiPoly::zero();
    const long k = static_cast<long>(F.k());

    auto ladder_entry = [&](long m, long j) {
        Rat pref = pow_rat(Rat(-1), j - 1) * poch_rat(Rat(m) + p.alpha + p.beta + 1, j - 1) *
                   pow_rat(Rat(1, 2), j - 1);
        return jacobi(m - j + 1, p.alpha + Rat(j - 1), p.beta + Rat(j - 1)) *
               MultiPoly::constant(pref);
    };

    PolyMatrix m;
    {
        std::vector<MultiPoly> row;
        for (long j = 1; j <= k + 1; ++j) row.push_back(ladder_entry(n - u_of(F), j));
        m.push_back(std::move(row));
    }
    for (long f : F.f1) {
        std::vector<MultiPoly> row;
        for (long j = 1; j <= k + 1; ++j) row.push_back(ladder_entry(f, j));
        m.push_back(std::move(row));
    }
    for (long f : F.f2) m.push_back(detail::jacobi_shifted_row(f, k + 1, p));
    return exact_div(det_poly(std::move(m)), detail::jacobi_det_denominator(F));
}

// Closed-form leading coefficient of the degree-n member. Vanishes exactly
// when pair_degree_normal is false and the degree drops.
inline Rat x_jacobi_lead_coeff(long n, const JacobiParams& p, const PairF& F) {
    const long u = u_of(F);
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    std::vector<long> firsts = {n - u};
    firsts.insert(firsts.end(), F.f1.begin(), F.f1.end());

    Rat lc = vandermonde(F.f1) * vandermonde(F.f2);
    for (long i : firsts) lc *= poch_rat(p.alpha + p.beta + Rat(i) + 1, i);
    for (long i : F.f2) lc *= poch_rat(p.alpha - p.beta + Rat(i) + 1, i);
    for (long i : firsts)
        for (long f : F.f2) lc *= p.beta + Rat(i) - Rat(f);
    for (long f : F.f1) lc *= Rat(f - n + u);

    const long e = binom2(k1 + 1) + binom2(k2);
    lc /= pow_rat(Rat(-1), e) * pow_rat(Rat(2), n + e) * factorial_rat(n - u);
    for (long f : F.f1) lc /= factorial_rat(f);
    for (long f : F.f2) lc /= factorial_rat(f);
    return lc;
}

// Square k x k determinant over the pair's rows alone at arbitrary
// parameter values, with no parameter gating. The empty pair yields the
// constant 1.
inline MultiPoly omega_jacobi_at(const Rat& a, const Rat& b, const PairF& F) {
    const long k = static_cast<long>(F.k());
    if (k == 0) return MultiPoly::one();
    JacobiParams p{a, b};
    PolyMatrix m = detail::jacobi_det_matrix(std::nullopt, k, p, F);
    return exact_div(det_poly(std::move(m)), detail::jacobi_det_denominator(F));
}

// Same determinant at validated family parameters; always a polynomial of
// degree u_F + k1.
inline MultiPoly omega_jacobi(const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    return omega_jacobi_at(p.alpha, p.beta, F);
}

// Closed-form value of omega_jacobi at +1 or -1 as a product over the
// pair; equals direct evaluation exactly.
inline Rat omega_boundary(const JacobiParams& p, const PairF& F, int at) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    if (at != 1 && at != -1)
        throw ParamViolation("boundary evaluation point must be +1 or -1");
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    const long k = k1 + k2;
    const std::array<const FiniteSet*, 2> comps = {&F.f1, &F.f2};

    Rat out(1);
    Rat div(1);
    for (int l = 0; l < 2; ++l) {
        const FiniteSet& Fl = *comps[static_cast<std::size_t>(l)];
        const long kl = static_cast<long>(Fl.size());
        const Rat base = at == 1 ? p.alpha : (l == 0 ? p.beta : -p.beta);
        out *= vandermonde(Fl);
        for (long i = 1; i <= kl; ++i) out *= poch_rat(base + Rat(i), kl - i + 1);
        for (long f : Fl) out *= poch_rat(base + Rat(kl) + 1, f - kl);
        for (long f : Fl) div *= factorial_rat(f);
    }
    if (at == 1) {
        div *= pow_rat(Rat(-2), binom2(k1) + binom2(k2));
        for (long i = 1; i <= std::min(k1, k2); ++i)
            div *= poch_rat(p.alpha + Rat(i), k - 2 * i + 1);
    } else {
        long fsum = set_sum(F.f1) + set_sum(F.f2);
        div *= pow_rat(Rat(-1), fsum) * pow_rat(Rat(2), binom2(k1) + binom2(k2));
    }
    if (div == 0) throw ParamPole("vanishing factor in boundary closed form");
    out /= div;

    for (int l = 0; l < 2; ++l) {
        const FiniteSet& Fl = *comps[static_cast<std::size_t>(l)];
        const Rat eps = l == 0 ? Rat(1) : Rat(-1);
        for (std::size_t i = 0; i < Fl.size(); ++i)
            for (std::size_t j = i + 1; j < Fl.size(); ++j)
                out *= p.alpha + eps * p.beta + Rat(Fl[i]) + Rat(Fl[j]) + 1;
    }
    if (at == 1) {
        for (long f : F.f1)
            for (long g : F.f2)
                out *= (p.alpha + Rat(f) + Rat(g) + 1) * (p.beta + Rat(f) - Rat(g));
    } else {
        for (long j = 1; j <= std::min(k1, k2); ++j)
            for (long i = j - k1; i <= k2 - j; ++i) out *= p.beta - Rat(i);
    }
    return out;
}

// Constant tying the bottom member of the family to the omega polynomial
// of the shifted-down pair at raised parameters.
inline Rat base_relation_constant(const JacobiParams& p, const PairF& F) {
    const long s = s_of(F);
    const long k1 = static_cast<long>(F.k1());
    Rat z(1);
    for (long f : F.f1) z *= poch_rat(Rat(f) + p.alpha + p.beta + 1, std::min(f, s));
    for (long f : F.f2) z *= poch_rat(p.beta - Rat(f), s);
    return z / pow_rat(Rat(-2), s * (2 * k1 - s + 1) / 2);
}

// The bottom member equals base_relation_constant times omega of the
// shifted-down pair with both parameters raised by s.
inline bool check_jacobi_base_relation(const JacobiParams& p, const PairF& F) {
    const Rat s(s_of(F));
    JacobiParams shifted{p.alpha + s, p.beta + s};
    MultiPoly rhs = omega_jacobi(shifted, pair_down(F)) *
                    MultiPoly::constant(base_relation_constant(p, F));
    return x_jacobi(u_of(F), p, F) == rhs;
}

// Proportionality constant of the degree-n discrete member against the
// continuous one under the rescaled-argument limit in N.
inline Rat hahn_limit_scale(long n, const Rat& alpha, const PairF& F) {
    const long u = u_of(F);
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    const long e = binom2(k1 + 1) + binom2(k2);
    Rat numer = pow_rat(Rat(-1), n) * pow_rat(Rat(-2), e) * factorial_rat(n - u);
    Rat denom = poch_rat(alpha + 1, n - u);
    for (const FiniteSet* c : {&F.f1, &F.f2})
        for (long f : *c) {
            numer *= factorial_rat(f);
            denom *= poch_rat(alpha + 1, f);
        }
    if (denom == 0) throw ParamPole("vanishing (alpha+1) factor in limit scale");
    return numer / denom;
}

// Same constant for the omega polynomials.
inline Rat hahn_limit_scale_omega(const Rat& alpha, const PairF& F) {
    const long u = u_of(F);
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    const long e = binom2(k1) + binom2(k2);
    Rat numer = pow_rat(Rat(-1), u + k1) * pow_rat(Rat(-2), e);
    Rat denom(1);
    for (const FiniteSet* c : {&F.f1, &F.f2})
        for (long f : *c) {
            numer *= factorial_rat(f);
            denom *= poch_rat(alpha + 1, f);
        }
    if (denom == 0) throw ParamPole("vanishing (alpha+1) factor in limit scale");
    return numer / denom;
}

namespace detail {

// x evaluated on the shrinking lattice: (1 - x) N / 2 + offset.
inline MultiPoly rescaled_argument(long offset) {
    MultiPoly repl = (MultiPoly::one() - var_x()) * var_N() / Rat(2);
    return repl + MultiPoly::constant(Rat(offset));
}

}  // namespace detail

// Exact limit check for the degree-n member: the coefficient of N^n in
// the discrete member at the rescaled argument equals the scale constant
// times the continuous member. False on any mismatch, including the
// discrete side growing faster than N^n.
inline bool limit_from_hahn(long n, const PairF& F, const Rat& alpha, const Rat& beta) {
    HahnParams hp{alpha, beta, std::nullopt};
    MultiPoly sub = x_hahn(n, hp, F).subst(Var::x, detail::rescaled_argument(0));
    MultiPoly expected = x_jacobi(n, JacobiParams{alpha, beta}, F) *
                         MultiPoly::constant(hahn_limit_scale(n, alpha, F));
    try {
        return top_N_coeff(sub, n) == expected;
    } catch (const Error&) {
        return false;
    }
}

// Same check for omega: coefficient of N^{u_F + k1} against the omega
// scale constant.
inline bool limit_from_hahn_omega(const PairF& F, const Rat& alpha, const Rat& beta) {
    HahnParams hp{alpha, beta, std::nullopt};
    const long d = u_of(F) + static_cast<long>(F.k1());
    MultiPoly sub = omega_hahn(hp, F).subst(Var::x, detail::rescaled_argument(0));
    MultiPoly expected = omega_jacobi(JacobiParams{alpha, beta}, F) *
                         MultiPoly::constant(hahn_limit_scale_omega(alpha, F));
    try {
        return top_N_coeff(sub, d) == expected;
    } catch (const Error&) {
        return false;
    }
}

// First and second finite differences of the discrete omega at the
// rescaled argument converge (one and two powers of N down) to -2 times
// the first and 4 times the second derivative of the continuous omega,
// both times the omega scale constant.
inline bool limit_from_hahn_omega_differences(const PairF& F, const Rat& alpha,
                                              const Rat& beta) {
    HahnParams hp{alpha, beta, std::nullopt};
    const long d = u_of(F) + static_cast<long>(F.k1());
    MultiPoly om = omega_hahn(hp, F);
    MultiPoly at0 = om.subst(Var::x, detail::rescaled_argument(0));
    MultiPoly at1 = om.subst(Var::x, detail::rescaled_argument(1));
    MultiPoly atm1 = om.subst(Var::x, detail::rescaled_argument(-1));
    const Rat scale = hahn_limit_scale_omega(alpha, F);
    MultiPoly omj = omega_jacobi(JacobiParams{alpha, beta}, F);

    MultiPoly diff1 = at1 - at0;
    MultiPoly want1 = omj.derivative(Var::x) * MultiPoly::constant(Rat(-2) * scale);
    MultiPoly diff2 = at1 - at0 - at0 + atm1;
    MultiPoly want2 = omj.derivative(Var::x).derivative(Var::x) *
                      MultiPoly::constant(Rat(4) * scale);
    try {
        bool first = d >= 1 ? top_N_coeff(diff1, d - 1) == want1
                            : diff1.is_zero() && want1.is_zero();
        bool second = d >= 2 ? top_N_coeff(diff2, d - 2) == want2
                             : diff2.is_zero() && want2.is_zero();
        return first && second;
    } catch (const Error&) {
        return false;
    }
}

// Second order differential operator with the pair's members as
// eigenfunctions; coefficients are rational functions over omega. The
// empty pair yields the classical operator of the base family.
inline DerivOp jacobi_second_order_op(const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    MultiPoly om = omega_jacobi(p, F);
    MultiPoly omd = om.derivative(Var::x);
    MultiPoly omdd = omd.derivative(Var::x);
    MultiPoly x = var_x();
    MultiPoly curv = MultiPoly::one() - x * x;

    DerivOp op;
    op.set(2, RationalFn(curv));
    MultiPoly lin1 = MultiPoly::constant(p.beta - p.alpha - Rat(2 * k2)) -
                     (p.alpha + p.beta + Rat(2 * k1 + 2)) * x;
    op.set(1, RationalFn(lin1 * om - Rat(2) * curv * omd, om));
    MultiPoly lin0 = MultiPoly::constant(p.alpha - p.beta + Rat(2 * k2)) +
                     (Rat(2 * k1) + p.alpha + p.beta) * x;
    Rat shift = lambda_val(p.alpha, p.beta, Rat(k1));
    op.set(0, RationalFn(lin0 * omd + curv * omdd - MultiPoly::constant(shift) * om, om));
    return op;
}

// Exact eigen-identity D(P_n) = -lambda(n - u_F) P_n, compared after
// clearing the omega denominators.
inline bool jacobi_eigen_check(long n, const JacobiParams& p, const PairF& F) {
    MultiPoly P = x_jacobi(n, p, F);
    RationalFn lhs = jacobi_second_order_op(p, F).apply(P);
    Rat ev = -lambda_val(p.alpha, p.beta, Rat(n - u_of(F)));
    return lhs == RationalFn(P * MultiPoly::constant(ev));
}

// First order factorization of the second order operator obtained by
// removing the largest element of the chosen component.
struct JacobiDarboux {
    PairF reduced;
    int side = 0;
    long removed = 0;
    Rat constant;  // lambda(removed) on side 1, lambda(removed - beta) on side 2
    DerivOp A;
    DerivOp B;
};

inline JacobiDarboux darboux_factor_jacobi(const JacobiParams& p, const PairF& F, int side) {
    if (side != 1 && side != 2) throw ParamViolation("factorization side must be 1 or 2");
    const FiniteSet& comp = side == 1 ? F.f1 : F.f2;
    if (comp.empty())
        throw EmptyComponent("the factorization removes an element of a nonempty component");
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());

    JacobiDarboux out;
    out.side = side;
    out.removed = comp.back();
    out.reduced = F.without(side, comp.size());

    MultiPoly om = omega_jacobi(p, F);
    MultiPoly omr = omega_jacobi(p, out.reduced);
    MultiPoly omd = om.derivative(Var::x);
    MultiPoly omrd = omr.derivative(Var::x);
    MultiPoly x = var_x();

    if (side == 1) {
        out.constant = lambda_val(p.alpha, p.beta, Rat(out.removed));
        MultiPoly curv = MultiPoly::one() - x * x;
        out.A.set(1, RationalFn(om, omr));
        out.A.set(0, -RationalFn(omd, omr));
        out.B.set(1, RationalFn(curv * omr, om));
        MultiPoly lin = MultiPoly::constant(p.alpha - p.beta + Rat(2 * k2)) +
                        (p.alpha + p.beta + Rat(2 * k1)) * x;
        out.B.set(0, -RationalFn(curv * omrd + lin * omr, om));
    } else {
        out.constant = lambda_val(p.alpha, p.beta, Rat(out.removed) - p.beta);
        MultiPoly xp1 = x + MultiPoly::one();
        MultiPoly xm1 = MultiPoly::one() - x;
        out.A.set(1, RationalFn(xp1 * om, omr));
        out.A.set(0, -RationalFn(xp1 * omd -
                                     MultiPoly::constant(p.beta + Rat(k1 - k2 + 1)) * om,
                                 omr));
        out.B.set(1, RationalFn(xm1 * omr, om));
        out.B.set(0, -RationalFn(xm1 * omrd +
                                     MultiPoly::constant(p.alpha + Rat(k1 + k2)) * omr,
                                 om));
    }
    return out;
}

// Both factorization identities: the reduced operator is B A - c Id and
// the full operator is A B - c Id.
inline bool check_darboux_jacobi_ops(const JacobiParams& p, const PairF& F, int side) {
    JacobiDarboux d = darboux_factor_jacobi(p, F, side);
    DerivOp cid = DerivOp::identity() * RationalFn::constant(d.constant);
    if (!(d.B.compose(d.A) - cid == jacobi_second_order_op(p, d.reduced))) return false;
    return d.A.compose(d.B) - cid == jacobi_second_order_op(p, F);
}

// Intertwining: A lifts the reduced family to the full one, and B drops
// back with an explicit eigen-style constant.
inline bool check_darboux_jacobi_intertwine(long n, const JacobiParams& p, const PairF& F,
                                            int side) {
    JacobiDarboux d = darboux_factor_jacobi(p, F, side);
    if (n < 0 || set_contains(F.f1, n)) return true;  // outside the claim
    MultiPoly full = x_jacobi(n + u_of(F), p, F);
    MultiPoly red = x_jacobi(n + u_of(d.reduced), p, d.reduced);
    if (!(d.A.apply(red) == RationalFn(full))) return false;
    Rat c = side == 1 ? -(Rat(n) - Rat(d.removed)) *
                            (Rat(n) + Rat(d.removed) + p.alpha + p.beta + 1)
                      : -(Rat(n) + p.alpha + Rat(d.removed) + 1) *
                            (Rat(n) + p.beta - Rat(d.removed));
    return d.B.apply(full) == RationalFn(red * MultiPoly::constant(c));
}

// Sign-classification function evaluated at a grid point x: the rational
// product part, with the gamma ratio handled separately by exact sign or
// 50-digit magnitude.
inline Rat jacobi_admissibility_rational_part(long x, const JacobiParams& p,
                                              const PairF& F) {
    Rat v(1);
    for (long f : F.f1) v *= (Rat(x) - Rat(f)) * (Rat(x) + Rat(f) + p.alpha + p.beta + 1);
    for (long f : F.f2) v *= (Rat(x) + p.beta - Rat(f)) * (Rat(x) + Rat(f) + p.alpha + 1);
    Rat d = Rat(2 * x) + p.alpha + p.beta + 1;
    if (d == 0) throw ParamPole("vanishing linear factor in admissibility denominator");
    return v / d;
}

inline int jacobi_admissibility_sign(long x, const JacobiParams& p, const PairF& F) {
    int s = sign_rat(jacobi_admissibility_rational_part(x, p, F));
    if (s == 0) return 0;
    s *= gamma_sign(Rat(x) + p.alpha + 1);
    s *= gamma_sign(Rat(x) + p.beta + 1);
    s *= gamma_sign(Rat(x) + p.alpha + p.beta + 1);
    return s;
}

inline Float50 jacobi_admissibility_value(long x, const JacobiParams& p, const PairF& F) {
    Float50 v = to_float50(jacobi_admissibility_rational_part(x, p, F));
    v *= gamma_value(Rat(x) + p.alpha + 1);
    v *= gamma_value(Rat(x) + p.beta + 1);
    return v / gamma_value(Rat(x) + p.alpha + p.beta + 1);
}

// Nonnegativity over all natural x is decided by this finite cutoff: past
// it every factor keeps a fixed positive sign.
inline long jacobi_admissible_cutoff(const JacobiParams& p, const PairF& F) {
    long hi = 0;
    const long fla = static_cast<long>(floor_rat(p.alpha));
    const long flb = static_cast<long>(floor_rat(p.beta));
    const long flab = static_cast<long>(floor_rat(p.alpha + p.beta));
    if (!F.f1.empty()) hi = std::max(hi, F.f1.back());
    if (!F.f2.empty()) hi = std::max(hi, -flb + F.f2.back());
    hi = std::max({hi, -fla, -flb, -flab});
    return hi + 1;
}

struct JacobiAdmissibility {
    bool admissible = false;
    long witness = -1;  // first x where the sign drops below zero
};

// The pair is admissible when the sign-classification function is
// nonnegative at every natural x; zeros are allowed.
inline JacobiAdmissibility jacobi_admissible(const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    JacobiAdmissibility out;
    const long hi = jacobi_admissible_cutoff(p, F);
    out.admissible = true;
    for (long x = 0; x <= hi; ++x) {
        if (jacobi_admissibility_sign(x, p, F) < 0) {
            out.admissible = false;
            out.witness = x;
            break;
        }
    }
    return out;
}

// Weight data for the continuous family: exponents at the two endpoints
// and the squared denominator polynomial.
struct JacobiWeight {
    Rat alpha_exp;  // alpha + k
    Rat beta_exp;   // beta + k1 - k2
    MultiPoly omega;
};

// Validates the hypotheses gating the positive weight: both exponents
// above -1 and omega root-free on [-1, 1], the latter decided exactly.
inline JacobiWeight jacobi_weight(const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    JacobiWeight w;
    w.alpha_exp = p.alpha + Rat(k1 + k2);
    w.beta_exp = p.beta + Rat(k1 - k2);
    if (!(w.alpha_exp + 1 > 0))
        throw PreconditionFailed("alpha + k + 1 must be positive");
    if (!(w.beta_exp + 1 > 0))
        throw PreconditionFailed("beta + k1 - k2 + 1 must be positive");
    w.omega = omega_jacobi(p, F);
    if (sturm_root_count(w.omega, Rat(-1), Rat(1)) != 0)
        throw PreconditionFailed("omega vanishes on [-1, 1]");
    return w;
}

namespace detail {

// Quadrature of the product of the degree n+u and m+u members against the
// weight; abs_tol lets integrals expected to vanish converge.
inline Float50 weighted_member_integral(const JacobiParams& p, const PairF& F,
                                        const JacobiWeight& w, long n, long m,
                                        const Float50& abs_tol) {
    std::vector<Float50> pc = f50_coeffs(x_jacobi(n + u_of(F), p, F));
    std::vector<Float50> qc = n == m ? pc : f50_coeffs(x_jacobi(m + u_of(F), p, F));
    std::vector<Float50> oc = f50_coeffs(w.omega);
    auto f = [&](const Float50& t) {
        Float50 ov = f50_eval(oc, t);
        return f50_eval(pc, t) * f50_eval(qc, t) / (ov * ov);
    };
    return integrate_jacobi_weighted(f, to_float50(w.alpha_exp), to_float50(w.beta_exp),
                                     Float50("1e-10"), abs_tol);
}

}  // namespace detail

// Quadrature norm of the degree n+u_F member against the weight, paired
// with the closed-form prediction. n counts from the bottom of the
// family: nonnegative and outside F1.
struct JacobiNorm {
    JacobiWeight weight;
    Float50 computed;
    Float50 predicted;
};

inline JacobiNorm weight_and_norm(const JacobiParams& p, const PairF& F, long n) {
    if (n < 0 || set_contains(F.f1, n))
        throw PreconditionFailed("the norm index must be a nonnegative integer outside F1");
    JacobiNorm out{jacobi_weight(p, F), Float50(0), Float50(0)};
    out.computed = detail::weighted_member_integral(p, F, out.weight, n, n, Float50(0));
    out.predicted = pow(Float50(2), to_float50(p.alpha + p.beta + 1)) *
                    jacobi_admissibility_value(n, p, F) / to_float50(factorial_rat(n));
    return out;
}

// Cross integral of two distinct members; vanishes up to quadrature
// accuracy, so the caller supplies the absolute scale to converge at.
inline Float50 jacobi_cross_integral(const JacobiParams& p, const PairF& F, long n, long m,
                                     const Float50& abs_tol) {
    if (n < 0 || m < 0 || set_contains(F.f1, n) || set_contains(F.f1, m))
        throw PreconditionFailed("the cross indices must be nonnegative and outside F1");
    JacobiWeight w = jacobi_weight(p, F);
    return detail::weighted_member_integral(p, F, w, n, m, abs_tol);
}

// Computational cross-check of the relationships between admissibility,
// the exponent sign conditions, and omega's roots on [-1, 1]: which
// implications hold for these parameters, with no proof claimed.
struct ConvthReport {
    JacobiAdmissibility admissibility;
    bool alpha_cond = false;    // alpha + k > -1
    bool beta_cond = false;     // beta + k1 - k2 > -1
    bool tech_cond = false;     // alpha + beta + s_F + 1 > 0
    long omega_roots = 0;       // distinct roots of omega in [-1, 1]
    bool necessity_holds = true;  // sign conditions + root-free imply admissible
    bool part1_holds = true;      // admissible implies the sign conditions
    bool part2_holds = true;      // admissible + technical margin implies root-free
};

inline ConvthReport convth_scan(const JacobiParams& p, const PairF& F) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    const long k1 = static_cast<long>(F.k1());
    const long k2 = static_cast<long>(F.k2());
    ConvthReport r;
    r.admissibility = jacobi_admissible(p, F);
    r.alpha_cond = p.alpha + Rat(k1 + k2) > -1;
    r.beta_cond = p.beta + Rat(k1 - k2) > -1;
    r.tech_cond = p.alpha + p.beta + Rat(s_of(F)) + 1 > 0;
    r.omega_roots = sturm_root_count(omega_jacobi(p, F), Rat(-1), Rat(1));
    const bool hypotheses = r.alpha_cond && r.beta_cond && r.omega_roots == 0;
    r.necessity_holds = !hypotheses || r.admissibility.admissible;
    r.part1_holds = !r.admissibility.admissible || (r.alpha_cond && r.beta_cond);
    r.part2_holds =
        !(r.admissibility.admissible && r.tech_cond) || r.omega_roots == 0;
    return r;
}

// Family wrapper with write-once caches; safe to share across verification
// jobs running over different n.
class XJacobiFamily {
public:
    XJacobiFamily(JacobiParams params, PairF pair)
        : params_(std::move(params)), pair_(std::move(pair)) {
        if (pair_.k() == 0)
            throw ParamViolation("the pair needs at least one nonempty component");
        validate_base_params(params_.alpha, params_.beta);
        validate_pair_params(params_.alpha, params_.beta, pair_);
    }

    const JacobiParams& params() const { return params_; }
    const PairF& pair() const { return pair_; }
    long u() const { return u_of(pair_); }
    long w() const { return w_of(pair_); }

    const MultiPoly& P(long n) const {
        return cached(p_cache_, n, [&] { return x_jacobi(n, params_, pair_); });
    }
    const MultiPoly& omega() const {
        return cached_single(omega_, [&] { return omega_jacobi(params_, pair_); });
    }
    const DerivOp& op() const {
        return cached_single(op_, [&] { return jacobi_second_order_op(params_, pair_); });
    }

    Rat boundary(int at) const { return omega_boundary(params_, pair_, at); }
    bool eigen_check(long n) const { return jacobi_eigen_check(n, params_, pair_); }
    JacobiDarboux darboux(int side) const {
        return darboux_factor_jacobi(params_, pair_, side);
    }
    JacobiAdmissibility admissible() const { return jacobi_admissible(params_, pair_); }
    JacobiNorm norm(long n) const { return weight_and_norm(params_, pair_, n); }
    ConvthReport scan() const { return convth_scan(params_, pair_); }

private:
    template <typename Map, typename Fn>
    const MultiPoly& cached(Map& map, long n, Fn&& fn) const {
        {
            std::lock_guard<std::mutex> g(mu_);
            auto it = map.find(n);
            if (it != map.end()) return it->second;
        }
        MultiPoly value = fn();
        std::lock_guard<std::mutex> g(mu_);
        return map.emplace(n, std::move(value)).first->second;
    }

    template <typename T, typename Fn>
    const T& cached_single(std::optional<T>& slot, Fn&& fn) const {
        {
            std::lock_guard<std::mutex> g(mu_);
            if (slot) return *slot;
        }
        T value = fn();
        std::lock_guard<std::mutex> g(mu_);
        if (!slot) slot = std::move(value);
        return *slot;
    }

    JacobiParams params_;
    PairF pair_;
    mutable std::mutex mu_;
    mutable std::map<long, MultiPoly> p_cache_;
    mutable std::optional<MultiPoly> omega_;
    mutable std::optional<DerivOp> op_;
};

}  // namespace xortho
