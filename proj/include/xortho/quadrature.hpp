#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include "xortho/errors.hpp"
#include "xortho/gammafn.hpp"

namespace xortho {

// Nodes and weights for the weight (1-x)^a (1+x)^b on (-1, 1).
struct GaussJacobiRule {
    std::vector<Float50> nodes;
    std::vector<Float50> weights;
};

namespace detail {

// Monic three-term recurrence pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}
// for the weight (1-x)^a (1+x)^b; beta_0 carries the total mass. The k = 0
// and k = 1 entries use the cancelled forms so a + b near 0 stays regular.
inline void jacobi_recurrence(std::size_t m, const Float50& a, const Float50& b,
                              std::vector<Float50>& al, std::vector<Float50>& be) {
    al.assign(m, Float50(0));
    be.assign(m, Float50(0));
    Float50 ab = a + b;
    al[0] = (b - a) / (ab + 2);
    be[0] = pow(Float50(2), ab + 1) * boost::math::tgamma(a + 1) *
            boost::math::tgamma(b + 1) / boost::math::tgamma(ab + 2);
    for (std::size_t k = 1; k < m; ++k) {
        Float50 tk = 2 * Float50(static_cast<unsigned>(k)) + ab;
        al[k] = (b - a) * (b + a) / (tk * (tk + 2));
        if (k == 1)
            be[k] = 4 * (a + 1) * (b + 1) / ((ab + 2) * (ab + 2) * (ab + 3));
        else
            be[k] = 4 * Float50(static_cast<unsigned>(k)) * (Float50(static_cast<unsigned>(k)) + a) *
                    (Float50(static_cast<unsigned>(k)) + b) * (Float50(static_cast<unsigned>(k)) + ab) /
                    (tk * tk * (tk + 1) * (tk - 1));
    }
}

// Value and derivative of the monic degree-m member at t.
inline std::pair<Float50, Float50> monic_eval(const std::vector<Float50>& al,
                                              const std::vector<Float50>& be,
                                              std::size_t m, const Float50& t) {
    Float50 p0(1), d0(0), p1(0), d1(0);
    for (std::size_t k = 0; k < m; ++k) {
        Float50 p2 = (t - al[k]) * p0 - (k > 0 ? be[k] * p1 : Float50(0));
        Float50 d2 = p0 + (t - al[k]) * d0 - (k > 0 ? be[k] * d1 : Float50(0));
        p1 = p0;
        d1 = d0;
        p0 = p2;
        d0 = d2;
    }
    return {p0, d0};
}

}  // namespace detail

// Golub-Welsch nodes seeded by a double-precision tridiagonal eigensolve,
// then polished by Newton iterations on the monic member in 50-digit
// arithmetic; weights from the reciprocal orthonormal-sum formula.
inline GaussJacobiRule gauss_jacobi(std::size_t m, const Float50& a, const Float50& b) {
    if (m == 0 || !(a > -1) || !(b > -1))
        throw PreconditionFailed("quadrature needs m >= 1 nodes and exponents > -1");
    std::vector<Float50> al, be;
    detail::jacobi_recurrence(m, a, b, al, be);

    Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 1));
    for (std::size_t k = 0; k < m; ++k) diag[static_cast<Eigen::Index>(k)] = al[k].convert_to<double>();
    for (std::size_t k = 1; k < m; ++k)
        sub[static_cast<Eigen::Index>(k - 1)] = sqrt(be[k]).convert_to<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(m - 1)),
                                  Eigen::EigenvaluesOnly);

    GaussJacobiRule rule;
    rule.nodes.reserve(m);
    rule.weights.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Float50 t(solver.eigenvalues()[static_cast<Eigen::Index>(i)]);
        for (int it = 0; it < 4; ++it) {
            auto [p, d] = detail::monic_eval(al, be, m, t);
            if (d == 0) break;
            t -= p / d;
        }
        Float50 s(0);
        Float50 p0(1), p1(0);
        Float50 nsq = be[0];
        s += p0 * p0 / nsq;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            Float50 p2 = (t - al[k]) * p0 - (k > 0 ? be[k] * p1 : Float50(0));
            p1 = p0;
            p0 = p2;
            nsq *= be[k + 1];
            s += p0 * p0 / nsq;
        }
        rule.nodes.push_back(t);
        rule.weights.push_back(1 / s);
    }
    return rule;
}

// Adaptive integral of f(x) (1-x)^a (1+x)^b over (-1, 1): the node count
// doubles from 32 until two successive estimates agree to rel_tol
// relative (or within abs_tol, for integrals expected to vanish), capped
// at 4096 nodes.
inline Float50 integrate_jacobi_weighted(const std::function<Float50(const Float50&)>& f,
                                         const Float50& a, const Float50& b,
                                         const Float50& rel_tol = Float50("1e-10"),
                                         const Float50& abs_tol = Float50(0)) {
    Float50 prev(0);
    bool have_prev = false;
    for (std::size_t m = 32; m <= 4096; m *= 2) {
        GaussJacobiRule rule = gauss_jacobi(m, a, b);
        Float50 acc(0);
        for (std::size_t i = 0; i < m; ++i) acc += rule.weights[i] * f(rule.nodes[i]);
        if (have_prev) {
            Float50 diff = abs(acc - prev);
            if (diff <= rel_tol * abs(acc) || diff <= abs_tol) return acc;
        }
        prev = acc;
        have_prev = true;
    }
    throw QuadratureNonConvergent("estimates still moving at the 4096-node cap");
}

}  // namespace xortho
