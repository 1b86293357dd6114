#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xortho/xhahn.hpp"
#include "xortho/xjacobi.hpp"

namespace xortho {

// Componentwise involution of a pair; empty components are fixed points.
inline PairF involution_pair(const PairF& F) {
    FiniteSet g1 = F.f1.empty() ? FiniteSet{} : involution(F.f1);
    FiniteSet g2 = F.f2.empty() ? FiniteSet{} : involution(F.f2);
    return PairF{std::move(g1), std::move(g2)};
}

// Parameter reflection for the eigenvalue polynomial: the companion
// determinant of the involuted pair is taken at these values. An empty
// component contributes a largest element of -1; the discrete side
// additionally evaluates at -N + n_offset.
struct ReflectedParams {
    Rat alpha;
    Rat beta;
    long n_offset;
};

inline ReflectedParams reflected_params(const Rat& alpha, const Rat& beta, const PairF& F) {
    const long m1 = F.f1.empty() ? -1 : F.f1.back();
    const long m2 = F.f2.empty() ? -1 : F.f2.back();
    return {-alpha - Rat(m1 + m2 + 2), -beta - Rat(m1 - m2), m1 - 1};
}

// Unique polynomial U with U(x) - U(x-1) = R(x) and U(0) = 0, built by
// peeling rising factorials: (x)_d telescopes to (x)_{d+1}/(d+1), and
// every (x)_{d+1} vanishes at 0. Coefficients may involve N.
inline MultiPoly backward_antidifference(const MultiPoly& R) {
    MultiPoly rem = R;
    MultiPoly out;
    while (!rem.is_zero()) {
        long d = rem.degree(Var::x);
        MultiPoly top = rem.coeff_poly(Var::x, static_cast<unsigned>(d));
        out += top * poch(var_x(), d + 1) / Rat(d + 1);
        rem -= top * poch(var_x(), d);
    }
    return out;
}

namespace detail {

inline void require_full_degree(const MultiPoly& ups, const PairF& F, const char* side) {
    if (ups.degree(Var::x) != w_of(F))
        throw ParamViolation(std::string(side) +
                             " eigenvalue polynomial drops below degree w_F: the companion "
                             "determinant degenerates at the reflected parameters");
}

}  // namespace detail

// Eigenvalue polynomial of the discrete family's recurrence: solves the
// first order difference equation U(x) - U(x-1) = W(-x), U(0) = 0, where
// W is the companion determinant of the involuted pair at the reflected
// parameters. Degree w_F; N may stay symbolic. The defining equation is
// re-checked on the result before returning. With strict = false a
// degenerate result of lower degree is returned instead of rejected; the
// recurrence then closes with vanishing outermost coefficients.
inline MultiPoly upsilon_hahn(const HahnParams& p, const PairF& F, bool strict = true) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    PairF G = involution_pair(F);
    ReflectedParams r = reflected_params(p.alpha, p.beta, F);
    NPoly Nref = -p.n_poly() + MultiPoly::constant(Rat(r.n_offset));
    MultiPoly W = omega_hahn_at(r.alpha, r.beta, Nref, G).subst(Var::x, -var_x());
    MultiPoly ups = backward_antidifference(W);
    if (!(ups - ups.subst(Var::x, var_x() - MultiPoly::one()) == W))
        throw PreconditionFailed("difference equation recheck failed on the eigenvalue polynomial");
    if (strict) detail::require_full_degree(ups, F, "discrete");
    return ups;
}

// Eigenvalue polynomial of the continuous family's recurrence: the
// antiderivative of the companion determinant of the involuted pair at
// the reflected parameters, scaled by 1/(2(alpha+1)), with U(0) = 0. The
// scale makes the recovered coefficients of the worked (empty,{1}) pair
// reproduce the explicit table at unit normalization. Degree w_F, with
// the same strict/relaxed split as the discrete construction.
inline MultiPoly upsilon_jacobi(const JacobiParams& p, const PairF& F, bool strict = true) {
    validate_base_params(p.alpha, p.beta);
    validate_pair_params(p.alpha, p.beta, F);
    PairF G = involution_pair(F);
    ReflectedParams r = reflected_params(p.alpha, p.beta, F);
    MultiPoly W = omega_jacobi_at(r.alpha, r.beta, G);
    MultiPoly ups = W.antiderivative(Var::x) / (2 * (p.alpha + 1));
    if (!(ups.derivative(Var::x) * MultiPoly::constant(2 * (p.alpha + 1)) == W))
        throw PreconditionFailed("derivative recheck failed on the eigenvalue polynomial");
    if (strict) detail::require_full_degree(ups, F, "continuous");
    return ups;
}

// Constant linking the two eigenvalue polynomials under the rescaled
// argument x -> (1-x)N/2: the degree-w_F coefficient in N of the discrete
// polynomial, shifted to vanish at 0, equals this constant times the
// continuous one. It is the omega limit scale of the involuted pair at
// the reflected first parameter, times (-1)^{w_F} (alpha+1).
inline Rat upsilon_limit_constant(const Rat& alpha, const PairF& F) {
    const long m1 = F.f1.empty() ? -1 : F.f1.back();
    const long m2 = F.f2.empty() ? -1 : F.f2.back();
    Rat ap = -alpha - Rat(m1 + m2 + 2);
    return pow_rat(Rat(-1), w_of(F)) * (alpha + 1) *
           hahn_limit_scale_omega(ap, involution_pair(F));
}

// Exact limit identity between the two eigenvalue polynomials, with N
// symbolic throughout. Runs the relaxed constructions so the identity
// is also checked at parameters where the degree degenerates.
inline bool upsilon_limit_check(const Rat& alpha, const Rat& beta, const PairF& F) {
    HahnParams hp{alpha, beta, std::nullopt};
    MultiPoly uh = upsilon_hahn(hp, F, false);
    MultiPoly sub = uh.subst(Var::x, detail::rescaled_argument(0));
    MultiPoly lead;
    try {
        lead = top_N_coeff(sub, w_of(F));
    } catch (const Error&) {
        return false;
    }
    MultiPoly shifted = lead - MultiPoly::constant(lead.eval_x(Rat(0)));
    MultiPoly expected = upsilon_jacobi(JacobiParams{alpha, beta}, F, false) *
                         MultiPoly::constant(upsilon_limit_constant(alpha, F));
    return shifted == expected;
}

namespace detail {

// Solves sum_j A_j p_{n+j} = V c_n p_n by matching x-coefficients over the
// window |j| <= w. Indices with n+j outside the degree set contribute the
// zero polynomial: they are excluded as unknowns and returned as zero.
// The returned vector is indexed j = -w..w.
template <typename MemberFn>
std::vector<Rat> recover_window(const MemberFn& member, const PairF& F, const MultiPoly& V,
                                long n, long w, const Rat& cn) {
    if (w < 1) throw ParamViolation("window half-width must be positive");
    if (n < 0 || !sigma_contains(F, n))
        throw ParamViolation("n = " + std::to_string(n) + " lies outside the degree set");
    std::vector<long> js;
    std::vector<std::vector<Rat>> cols;
    for (long j = -w; j <= w; ++j) {
        if (n + j < 0 || !sigma_contains(F, n + j)) continue;
        js.push_back(j);
        cols.push_back(uni_coeffs(member(n + j)));
    }
    std::vector<Rat> rhs = uni_coeffs(V * member(n) * MultiPoly::constant(cn));
    std::size_t rows = rhs.size();
    for (const auto& c : cols) rows = std::max(rows, c.size());

    std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(js.size(), Rat(0)));
    std::vector<Rat> b(rows, Rat(0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t d = 0; d < cols[c].size(); ++d) A[d][c] = cols[c][d];
    for (std::size_t d = 0; d < rhs.size(); ++d) b[d] = rhs[d];

    std::vector<Rat> sol = solve_linear(A, b);
    std::vector<Rat> out(static_cast<std::size_t>(2 * w + 1), Rat(0));
    for (std::size_t c = 0; c < js.size(); ++c)
        out[static_cast<std::size_t>(js[c] + w)] = sol[c];
    return out;
}

}  // namespace detail

// Exact coefficients A_{-w}..A_w of the relation
// sum_j A_j p_{n+j} = V(x) c_n p_n(x) for the discrete family.
inline std::vector<Rat> recover_coeffs(const XHahnFamily& fam, const MultiPoly& V, long n,
                                       long w, const Rat& cn = Rat(1)) {
    return detail::recover_window([&](long m) { return fam.h(m); }, fam.pair(), V, n, w, cn);
}

// Same for the continuous family.
inline std::vector<Rat> recover_coeffs(const XJacobiFamily& fam, const MultiPoly& V, long n,
                                       long w, const Rat& cn = Rat(1)) {
    return detail::recover_window([&](long m) { return fam.P(m); }, fam.pair(), V, n, w, cn);
}

// A finite-window recurrence: eigenvalue polynomial plus the exact
// coefficient vectors, indexed j = -w_F..w_F, for each stored n.
struct Recurrence {
    long order = 0;  // 2 w_F + 1
    MultiPoly upsilon;
    std::map<long, std::vector<Rat>> coeffs_by_n;
};

// Per-n outcome of a recurrence verification.
struct RecurrenceCheck {
    long n = 0;
    bool ok = false;
    bool skipped = false;      // n outside the degree set
    std::string note;          // failure description when !ok
    std::vector<Rat> coeffs;   // recovered A_j on success
};

struct RecurrenceReport {
    long w = 0;
    long order = 0;
    bool all_ok = true;
    std::vector<RecurrenceCheck> checks;
};

namespace detail {

template <typename MemberFn>
RecurrenceReport verify_window_impl(const MemberFn& member, const PairF& F, const MultiPoly& V,
                                    long n_lo, long n_hi) {
    const long w = w_of(F);
    RecurrenceReport rep;
    rep.w = w;
    rep.order = 2 * w + 1;
    for (long n = n_lo; n <= n_hi; ++n) {
        RecurrenceCheck chk;
        chk.n = n;
        if (n < 0 || !sigma_contains(F, n)) {
            chk.ok = true;
            chk.skipped = true;
            chk.note = "outside the degree set";
            rep.checks.push_back(std::move(chk));
            continue;
        }
        try {
            chk.coeffs = recover_window(member, F, V, n, w, Rat(1));
            MultiPoly resid = V * member(n);
            for (long j = -w; j <= w; ++j) {
                const Rat& a = chk.coeffs[static_cast<std::size_t>(j + w)];
                if (a != 0) resid -= member(n + j) * MultiPoly::constant(a);
            }
            if (resid.is_zero())
                chk.ok = true;
            else
                chk.note = "nonzero residual after recovery";
        } catch (const Error& e) {
            chk.note = e.what();
        }
        rep.all_ok = rep.all_ok && chk.ok;
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

}  // namespace detail

// Verifies the order-(2 w_F + 1) recurrence with eigenvalue polynomial V
// over n = n_lo..n_hi at unit normalization: per-n recovery plus an
// independent zero-residual recheck. Exceptions become report entries.
inline RecurrenceReport verify_recurrence(const XHahnFamily& fam, const MultiPoly& V,
                                          long n_lo, long n_hi) {
    return detail::verify_window_impl([&](long m) { return fam.h(m); }, fam.pair(), V,
                                      n_lo, n_hi);
}

inline RecurrenceReport verify_recurrence(const XJacobiFamily& fam, const MultiPoly& V,
                                          long n_lo, long n_hi) {
    return detail::verify_window_impl([&](long m) { return fam.P(m); }, fam.pair(), V,
                                      n_lo, n_hi);
}

// Normalization constant for assembled tables: either c_n = 1 or c_n = n
// (the worked discrete example's convention).
enum class CnMode { unit, degree };

inline Rat cn_value(CnMode mode, long n) { return mode == CnMode::unit ? Rat(1) : Rat(n); }

namespace detail {

template <typename Fam, typename MemberFn>
Recurrence build_recurrence_impl(const Fam& fam, const MemberFn& member, MultiPoly upsilon,
                                 long n_lo, long n_hi, CnMode mode) {
    Recurrence rec;
    rec.order = 2 * fam.w() + 1;
    rec.upsilon = std::move(upsilon);
    for (long n = n_lo; n <= n_hi; ++n) {
        if (n < 0 || !sigma_contains(fam.pair(), n)) continue;
        rec.coeffs_by_n[n] = recover_window(member, fam.pair(), rec.upsilon, n, fam.w(),
                                            cn_value(mode, n));
    }
    return rec;
}

}  // namespace detail

// Assembles the recurrence table for n = n_lo..n_hi: the eigenvalue
// polynomial from the pair's construction and the recovered coefficients
// at the requested normalization. Indices outside the degree set are
// omitted from the map.
inline Recurrence build_recurrence(const XHahnFamily& fam, long n_lo, long n_hi,
                                   CnMode mode = CnMode::unit) {
    return detail::build_recurrence_impl(fam, [&](long m) { return fam.h(m); },
                                         upsilon_hahn(fam.params(), fam.pair()), n_lo, n_hi,
                                         mode);
}

inline Recurrence build_recurrence(const XJacobiFamily& fam, long n_lo, long n_hi,
                                   CnMode mode = CnMode::unit) {
    return detail::build_recurrence_impl(fam, [&](long m) { return fam.P(m); },
                                         upsilon_jacobi(fam.params(), fam.pair()), n_lo, n_hi,
                                         mode);
}

}  // namespace xortho
