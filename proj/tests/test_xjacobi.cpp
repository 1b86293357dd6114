#include <catch2/catch_amalgamated.hpp>

#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "xortho/xjacobi.hpp"

using namespace xortho;

namespace {

JacobiParams jp(const Rat& a, const Rat& b) { return JacobiParams{a, b}; }

PairF pf(std::vector<long> f1, std::vector<long> f2) {
    return PairF{FiniteSet(std::move(f1)), FiniteSet(std::move(f2))};
}

struct Instance {
    PairF F;
    Rat a;
    Rat b;
};

// Small pair shapes with parameters keeping the degree normalization
// intact and every guard satisfied.
std::vector<Instance> standard_instances() {
    return {
        {pf({1}, {}), Rat(1, 2), Rat(1, 3)},
        {pf({}, {1}), Rat(1, 3), Rat(7, 2)},
        {pf({1, 2}, {}), Rat(1, 4), Rat(3, 2)},
        {pf({2}, {}), Rat(-1, 2), Rat(5, 3)},
        {pf({1}, {1}), Rat(1, 3), Rat(7, 2)},
        {pf({}, {1, 2}), Rat(1, 3), Rat(7, 2)},
    };
}

// Non-integer alpha, beta, alpha + beta never a negative integer; keeps
// every pair below admissible for evaluation.
std::vector<std::pair<Rat, Rat>> boundary_params() {
    return {
        {Rat(1, 3), Rat(1, 2)},  {Rat(-2, 5), Rat(7, 3)}, {Rat(5, 2), Rat(-3, 7)},
        {Rat(-7, 6), Rat(13, 6)}, {Rat(9, 4), Rat(-5, 4)}, {Rat(-1, 2), Rat(-1, 3)},
        {Rat(22, 7), Rat(3, 8)}, {Rat(-8, 5), Rat(11, 6)}, {Rat(7, 2), Rat(7, 2)},
        {Rat(-4, 3), Rat(-6, 5)},
    };
}

std::vector<PairF> boundary_pairs() {
    return {
        pf({}, {}),        pf({1}, {}),       pf({}, {1}),     pf({2}, {}),
        pf({}, {2}),       pf({1, 2}, {}),    pf({}, {1, 2}),  pf({1}, {1}),
        pf({1, 3}, {}),    pf({}, {1, 3}),    pf({2}, {1}),    pf({1}, {2}),
        pf({1, 2}, {1}),   pf({1}, {1, 2}),   pf({1, 2, 3}, {}), pf({}, {1, 2, 3}),
        pf({1, 3}, {2}),   pf({2, 4}, {1}),
    };
}

bool close_rel(const Float50& got, const Float50& want, const Float50& tol) {
    using boost::multiprecision::abs;
    Float50 scale = abs(want);
    if (scale < 1) scale = 1;
    return abs(got - want) <= tol * scale;
}

}  // namespace

TEST_CASE("empty pair reproduces the classical family") {
    PairF none = pf({}, {});
    JacobiParams p = jp(Rat(1, 3), Rat(7, 2));
    REQUIRE(omega_jacobi(p, none) == MultiPoly::one());
    for (long n = 0; n <= 4; ++n) {
        REQUIRE(x_jacobi(n, p, none) == jacobi(n, p.alpha, p.beta));
        REQUIRE(jacobi_eigen_check(n, p, none));
    }
    // The classical operator in divided form annihilates constants.
    DerivOp D = jacobi_second_order_op(p, none);
    REQUIRE(D.apply(MultiPoly::one()) == RationalFn(MultiPoly::zero()));
}

TEST_CASE("determinant and shifted-parameter routes agree") {
    for (const Instance& inst : standard_instances()) {
        JacobiParams p = jp(inst.a, inst.b);
        const long u = u_of(inst.F);
        for (long n : sigma_of(inst.F, u + 3)) {
            REQUIRE(x_jacobi(n, p, inst.F) == x_jacobi_alt(n, p, inst.F));
        }
    }
}

TEST_CASE("degree and leading coefficient") {
    SECTION("normal parameters give full degree and the closed-form lead") {
        for (const Instance& inst : standard_instances()) {
            JacobiParams p = jp(inst.a, inst.b);
            REQUIRE(pair_degree_normal(p.alpha, p.beta, inst.F));
            for (long n : sigma_of(inst.F, u_of(inst.F) + 3)) {
                MultiPoly P = x_jacobi(n, p, inst.F);
                REQUIRE(P.degree(Var::x) == n);
                REQUIRE(P.leading_coeff_in(Var::x).constant_value() ==
                        x_jacobi_lead_coeff(n, p, inst.F));
            }
        }
    }
    SECTION("the degree drops exactly where the closed-form lead vanishes") {
        // alpha - beta = -2 lands in the drop window of f = 1.
        JacobiParams p = jp(Rat(0), Rat(2));
        PairF F = pf({}, {1});
        REQUIRE_FALSE(pair_degree_normal(p.alpha, p.beta, F));
        MultiPoly P2 = x_jacobi(2, p, F);
        REQUIRE(x_jacobi_lead_coeff(2, p, F) == 0);
        REQUIRE(P2.degree(Var::x) < 2);
        REQUIRE_FALSE(P2.is_zero());
    }
}

TEST_CASE("members vanish off the index set") {
    JacobiParams p = jp(Rat(1, 2), Rat(1, 3));
    REQUIRE(x_jacobi(1, p, pf({1}, {})).is_zero());   // u = 0, excluded slot u + 1
    REQUIRE(x_jacobi(0, p, pf({}, {1})).is_zero());   // below u = 1
    REQUIRE(x_jacobi(-2, p, pf({1}, {})).is_zero());
    REQUIRE(x_jacobi(2, p, pf({1}, {1})).is_zero());  // u = 1, excluded slot u + 1
}

TEST_CASE("omega degree and boundary closed forms") {
    SECTION("degree is the offset plus the first component size") {
        for (const Instance& inst : standard_instances()) {
            MultiPoly om = omega_jacobi(jp(inst.a, inst.b), inst.F);
            REQUIRE(om.degree(Var::x) ==
                    u_of(inst.F) + static_cast<long>(inst.F.k1()));
        }
        MultiPoly big = omega_jacobi(jp(Rat(-3, 2), Rat(-9, 7)), pf({2, 3, 4}, {1, 2}));
        REQUIRE(big.degree(Var::x) == 8);
    }
    SECTION("closed forms match direct evaluation across pairs and parameters") {
        for (const PairF& F : boundary_pairs()) {
            for (const auto& [a, b] : boundary_params()) {
                JacobiParams p = jp(a, b);
                MultiPoly om = omega_jacobi(p, F);
                REQUIRE(omega_boundary(p, F, 1) == om.eval_x(Rat(1)));
                REQUIRE(omega_boundary(p, F, -1) == om.eval_x(Rat(-1)));
            }
        }
    }
    SECTION("frozen values") {
        JacobiParams p = jp(Rat(1, 3), Rat(7, 2));
        // Single second-component element: alpha + 1 and beta - 1.
        REQUIRE(omega_boundary(p, pf({}, {1}), 1) == Rat(4, 3));
        REQUIRE(omega_boundary(p, pf({}, {1}), -1) == Rat(5, 2));
        // Single first-component element: alpha + 1 and -(beta + 1).
        REQUIRE(omega_boundary(p, pf({1}, {}), 1) == Rat(4, 3));
        REQUIRE(omega_boundary(p, pf({1}, {}), -1) == Rat(-9, 2));
        // One element on each side: (a+1)(a+3)b and -b(b^2-1).
        REQUIRE(omega_boundary(p, pf({1}, {1}), 1) == Rat(140, 9));
        REQUIRE(omega_boundary(p, pf({1}, {1}), -1) == Rat(-315, 8));
    }
    SECTION("rejects points other than the endpoints") {
        REQUIRE_THROWS_AS(omega_boundary(jp(Rat(1, 3), Rat(1, 2)), pf({1}, {}), 0),
                          ParamViolation);
    }
}

TEST_CASE("bottom member factors through the shifted-down pair") {
    for (const Instance& inst : standard_instances()) {
        REQUIRE(check_jacobi_base_relation(jp(inst.a, inst.b), inst.F));
    }
    REQUIRE(check_jacobi_base_relation(jp(Rat(-3, 2), Rat(-9, 7)), pf({2, 3, 4}, {1, 2})));
    // Frozen constant for a single first-component element: -(a+b+2)/2.
    REQUIRE(base_relation_constant(jp(Rat(1, 3), Rat(1, 2)), pf({1}, {})) == Rat(-17, 12));
}

TEST_CASE("eigen identity for the second order operator") {
    SECTION("single second-component element in the degree-drop regime") {
        JacobiParams p = jp(Rat(0), Rat(2));
        PairF F = pf({}, {1});
        for (long n = 1; n <= 4; ++n) REQUIRE(jacobi_eigen_check(n, p, F));
    }
    SECTION("single first-component element at the symmetric corner") {
        JacobiParams p = jp(Rat(0), Rat(0));
        PairF F = pf({1}, {});
        for (long n : {0L, 2L, 3L}) REQUIRE(jacobi_eigen_check(n, p, F));
        // The bottom member sits at eigenvalue zero.
        MultiPoly P0 = x_jacobi(0, p, F);
        REQUIRE(jacobi_second_order_op(p, F).apply(P0) == RationalFn(MultiPoly::zero()));
    }
    SECTION("mixed pair") {
        JacobiParams p = jp(Rat(1, 3), Rat(7, 2));
        PairF F = pf({1}, {1});
        for (long n : {1L, 3L, 4L}) REQUIRE(jacobi_eigen_check(n, p, F));
    }
}

TEST_CASE("rescaled limits of the discrete family") {
    SECTION("classical members on the empty pair") {
        PairF none = pf({}, {});
        for (long n = 0; n <= 2; ++n)
            REQUIRE(limit_from_hahn(n, none, Rat(1, 3), Rat(1, 2)));
    }
    SECTION("members") {
        PairF F2 = pf({}, {1});
        for (long n : {1L, 2L, 3L}) REQUIRE(limit_from_hahn(n, F2, Rat(0), Rat(2)));
        PairF F1 = pf({1}, {});
        for (long n : {0L, 2L}) REQUIRE(limit_from_hahn(n, F1, Rat(0), Rat(0)));
        REQUIRE(limit_from_hahn(1, pf({1}, {1}), Rat(1, 3), Rat(7, 2)));
    }
    SECTION("omega and its difference quotients") {
        std::vector<std::pair<PairF, std::pair<Rat, Rat>>> cases = {
            {pf({1}, {}), {Rat(0), Rat(0)}},
            {pf({}, {1}), {Rat(0), Rat(2)}},
            {pf({1}, {1}), {Rat(1, 3), Rat(7, 2)}},
            {pf({1, 2}, {}), {Rat(1, 4), Rat(3, 2)}},
        };
        for (const auto& [F, ab] : cases) {
            REQUIRE(limit_from_hahn_omega(F, ab.first, ab.second));
            REQUIRE(limit_from_hahn_omega_differences(F, ab.first, ab.second));
        }
    }
}

TEST_CASE("first order factorization") {
    SECTION("first side") {
        for (const Instance& inst :
             {Instance{pf({1}, {}), Rat(0), Rat(0)},
              Instance{pf({1, 2}, {}), Rat(1, 3), Rat(1, 2)},
              Instance{pf({1}, {1}), Rat(1, 3), Rat(7, 2)}}) {
            JacobiParams p = jp(inst.a, inst.b);
            JacobiDarboux d = darboux_factor_jacobi(p, inst.F, 1);
            REQUIRE(d.removed == inst.F.f1.back());
            REQUIRE(d.constant ==
                    lambda_val(p.alpha, p.beta, Rat(d.removed)));
            REQUIRE(check_darboux_jacobi_ops(p, inst.F, 1));
            for (long n = 0; n <= 2; ++n)
                REQUIRE(check_darboux_jacobi_intertwine(n, p, inst.F, 1));
        }
    }
    SECTION("second side") {
        for (const Instance& inst :
             {Instance{pf({}, {1}), Rat(0), Rat(2)},
              Instance{pf({}, {1, 2}), Rat(1, 3), Rat(7, 2)},
              Instance{pf({1}, {1}), Rat(1, 3), Rat(7, 2)}}) {
            JacobiParams p = jp(inst.a, inst.b);
            JacobiDarboux d = darboux_factor_jacobi(p, inst.F, 2);
            REQUIRE(d.removed == inst.F.f2.back());
            REQUIRE(d.constant ==
                    lambda_val(p.alpha, p.beta, Rat(d.removed) - p.beta));
            REQUIRE(check_darboux_jacobi_ops(p, inst.F, 2));
            for (long n = 0; n <= 2; ++n)
                REQUIRE(check_darboux_jacobi_intertwine(n, p, inst.F, 2));
        }
    }
    SECTION("empty component refuses to factor") {
        REQUIRE_THROWS_AS(darboux_factor_jacobi(jp(Rat(0), Rat(2)), pf({}, {1}), 1),
                          EmptyComponent);
        REQUIRE_THROWS_AS(darboux_factor_jacobi(jp(Rat(0), Rat(0)), pf({1}, {}), 2),
                          EmptyComponent);
    }
}

TEST_CASE("admissibility classification") {
    SECTION("single second-component element fixtures") {
        JacobiAdmissibility ok = jacobi_admissible(jp(Rat(0), Rat(2)), pf({}, {1}));
        REQUIRE(ok.admissible);
        REQUIRE(ok.witness == -1);
        JacobiAdmissibility bad = jacobi_admissible(jp(Rat(0), Rat(1, 2)), pf({}, {1}));
        REQUIRE_FALSE(bad.admissible);
        REQUIRE(bad.witness == 0);
    }
    SECTION("singleton region boundary grid") {
        // Admissible exactly when -1 < a and 1 < b, or -2 < a < -1 and 0 < b < 1.
        PairF F = pf({}, {1});
        auto adm = [&](const Rat& a, const Rat& b) {
            return jacobi_admissible(jp(a, b), F).admissible;
        };
        REQUIRE(adm(Rat(1, 2), Rat(4, 3)));
        REQUIRE_FALSE(adm(Rat(1, 2), Rat(1, 3)));
        REQUIRE(adm(Rat(-1, 2), Rat(4, 3)));
        REQUIRE_FALSE(adm(Rat(-1, 2), Rat(1, 3)));
        REQUIRE(adm(Rat(-3, 2), Rat(1, 3)));
        REQUIRE_FALSE(adm(Rat(-3, 2), Rat(4, 3)));
        REQUIRE_FALSE(adm(Rat(-5, 2), Rat(1, 3)));
        REQUIRE_FALSE(adm(Rat(-5, 2), Rat(4, 3)));
    }
    SECTION("large pair stays admissible while its shifted-down pair fails") {
        PairF F = pf({2, 3, 4}, {1, 2});
        JacobiParams p = jp(Rat(-3, 2), Rat(-9, 7));
        REQUIRE(jacobi_admissible(p, F).admissible);
        const Rat s(s_of(F));
        JacobiAdmissibility down =
            jacobi_admissible(jp(p.alpha + s, p.beta + s), pair_down(F));
        REQUIRE_FALSE(down.admissible);
        REQUIRE(down.witness == 0);
    }
}

TEST_CASE("admissibility scan against weight hypotheses") {
    SECTION("admissible with the technical margin violated, omega still root-free") {
        ConvthReport r = convth_scan(jp(Rat(-3, 2), Rat(-9, 7)), pf({2, 3, 4}, {1, 2}));
        REQUIRE(r.admissibility.admissible);
        REQUIRE(r.alpha_cond);
        REQUIRE(r.beta_cond);
        REQUIRE_FALSE(r.tech_cond);
        REQUIRE(r.omega_roots == 0);
        REQUIRE(r.necessity_holds);
        REQUIRE(r.part1_holds);
        REQUIRE(r.part2_holds);
    }
    SECTION("plain admissible instance") {
        ConvthReport r = convth_scan(jp(Rat(0), Rat(2)), pf({}, {1}));
        REQUIRE(r.admissibility.admissible);
        REQUIRE(r.tech_cond);
        REQUIRE(r.omega_roots == 0);
        REQUIRE(r.necessity_holds);
        REQUIRE(r.part1_holds);
        REQUIRE(r.part2_holds);
    }
    SECTION("non-admissible instance carries a root") {
        ConvthReport r = convth_scan(jp(Rat(0), Rat(1, 2)), pf({}, {1}));
        REQUIRE_FALSE(r.admissibility.admissible);
        REQUIRE(r.omega_roots == 1);
        REQUIRE(r.necessity_holds);
        REQUIRE(r.part1_holds);
        REQUIRE(r.part2_holds);
    }
}

TEST_CASE("weight, norms, and orthogonality") {
    JacobiParams p = jp(Rat(0), Rat(2));
    PairF F = pf({}, {1});
    SECTION("quadrature norms match the closed-form prediction") {
        for (long n = 0; n <= 3; ++n) {
            JacobiNorm nm = weight_and_norm(p, F, n);
            REQUIRE(close_rel(nm.computed, nm.predicted, Float50("1e-8")));
        }
        // Frozen bottom norm: 2^3 H(0) / 0! = 16/3.
        JacobiNorm nm0 = weight_and_norm(p, F, 0);
        REQUIRE(close_rel(nm0.predicted, Float50(16) / 3, Float50("1e-40")));
    }
    SECTION("distinct members integrate to zero at scale") {
        Float50 scale = weight_and_norm(p, F, 0).predicted;
        for (auto [n, m] : {std::pair<long, long>{0, 1}, {1, 2}, {0, 3}}) {
            Float50 v = jacobi_cross_integral(p, F, n, m, Float50("1e-12"));
            using boost::multiprecision::abs;
            REQUIRE(abs(v) <= Float50("1e-10") * scale);
        }
    }
    SECTION("gates") {
        REQUIRE_THROWS_AS(weight_and_norm(p, F, -1), PreconditionFailed);
        REQUIRE_THROWS_AS(weight_and_norm(jp(Rat(0), Rat(0)), pf({1}, {}), 1),
                          PreconditionFailed);  // index inside the first component
        // Exponent below -1.
        REQUIRE_THROWS_AS(jacobi_weight(jp(Rat(-5, 2), Rat(7, 2)), pf({}, {1})),
                          PreconditionFailed);
        // Omega vanishes inside the interval when not admissible.
        REQUIRE_THROWS_AS(jacobi_weight(jp(Rat(0), Rat(1, 2)), pf({}, {1})),
                          PreconditionFailed);
    }
}

TEST_CASE("root counting") {
    MultiPoly x = var_x();
    MultiPoly quarter = x * x - MultiPoly::constant(Rat(1, 4));
    REQUIRE(sturm_root_count(quarter, Rat(-1), Rat(1)) == 2);
    REQUIRE(sturm_root_count(quarter, Rat(0), Rat(1)) == 1);
    REQUIRE(sturm_root_count(quarter, Rat(2), Rat(3)) == 0);

    MultiPoly cubic = x * (x - MultiPoly::one()) * (x + MultiPoly::one());
    REQUIRE(sturm_root_count(cubic, Rat(-1), Rat(1)) == 3);  // both endpoints
    REQUIRE(sturm_root_count(cubic, Rat(0), Rat(1)) == 2);
    REQUIRE(sturm_root_count(cubic, Rat(-1, 2), Rat(1, 2)) == 1);

    // Multiple roots are counted once.
    MultiPoly sq = (x - MultiPoly::constant(Rat(1, 2))).pow(2) * (x + MultiPoly::constant(Rat(2)));
    REQUIRE(sturm_root_count(sq, Rat(-1), Rat(1)) == 1);
    REQUIRE(sturm_root_count(sq, Rat(-3), Rat(1)) == 2);

    MultiPoly dense = MultiPoly::one();
    for (long i = 1; i <= 5; ++i)
        dense = dense * (x - MultiPoly::constant(Rat(i, 7)));
    REQUIRE(sturm_root_count(dense, Rat(0), Rat(1)) == 5);
    REQUIRE(sturm_root_count(dense, Rat(1, 7), Rat(3, 7)) == 3);

    REQUIRE(sturm_root_count(MultiPoly::constant(Rat(5)), Rat(-1), Rat(1)) == 0);
    REQUIRE_THROWS_AS(sturm_root_count(MultiPoly::zero(), Rat(-1), Rat(1)),
                      PreconditionFailed);
    REQUIRE_THROWS_AS(sturm_root_count(x, Rat(1), Rat(1)), PreconditionFailed);
    REQUIRE_THROWS_AS(sturm_root_count(var_N(), Rat(-1), Rat(1)), PreconditionFailed);
}

TEST_CASE("gamma sign and magnitude") {
    REQUIRE(gamma_sign(Rat(3)) == 1);
    REQUIRE(gamma_sign(Rat(1, 2)) == 1);
    REQUIRE(gamma_sign(Rat(-1, 2)) == -1);
    REQUIRE(gamma_sign(Rat(-3, 2)) == 1);
    REQUIRE(gamma_sign(Rat(-5, 2)) == -1);
    REQUIRE(gamma_sign(Rat(-9, 7)) == 1);  // in (-2, -1), where gamma is positive
    REQUIRE_THROWS_AS(gamma_sign(Rat(0)), GammaPole);
    REQUIRE_THROWS_AS(gamma_sign(Rat(-7)), GammaPole);
    REQUIRE_THROWS_AS(gamma_value(Rat(-2)), GammaPole);

    using boost::multiprecision::abs;
    REQUIRE(close_rel(gamma_value(Rat(5)), Float50(24), Float50("1e-45")));
    Float50 pi = boost::math::constants::pi<Float50>();
    REQUIRE(close_rel(gamma_value(Rat(1, 2)) * gamma_value(Rat(1, 2)), pi, Float50("1e-45")));
    REQUIRE(close_rel(gamma_value(Rat(-1, 2)),
                      Float50(-2) * gamma_value(Rat(1, 2)), Float50("1e-45")));
    // Reflection through two poles: G(-3/2) = G(1/2) / ((-3/2)(-1/2)).
    REQUIRE(close_rel(gamma_value(Rat(-3, 2)),
                      gamma_value(Rat(1, 2)) * Float50(4) / 3, Float50("1e-45")));
}

TEST_CASE("fixed-weight quadrature") {
    using boost::multiprecision::abs;
    SECTION("nodes and weights integrate monomials exactly") {
        GaussJacobiRule r = gauss_jacobi(3, Float50(0), Float50(0));
        Float50 quartic(0);
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            quartic += r.weights[i] * r.nodes[i] * r.nodes[i] * r.nodes[i] * r.nodes[i];
        REQUIRE(close_rel(quartic, Float50(2) / 5, Float50("1e-44")));
    }
    SECTION("adaptive doubling hits standard integrals") {
        Float50 pi = boost::math::constants::pi<Float50>();
        Float50 cheb = integrate_jacobi_weighted(
            [](const Float50&) { return Float50(1); }, Float50("-0.5"), Float50("-0.5"));
        REQUIRE(close_rel(cheb, pi, Float50("1e-30")));
        Float50 cup = integrate_jacobi_weighted(
            [](const Float50&) { return Float50(1); }, Float50(1), Float50(1));
        REQUIRE(close_rel(cup, Float50(4) / 3, Float50("1e-30")));
    }
    SECTION("rejects exponents at or below -1") {
        REQUIRE_THROWS_AS(gauss_jacobi(4, Float50(-1), Float50(0)), PreconditionFailed);
    }
}

TEST_CASE("discrete and continuous sign functions agree") {
    // Up to the fixed sign of Gamma(a+1) Gamma(b+1), both classification
    // functions carry the same sign at every shared grid point.
    std::vector<Instance> cases = {
        {pf({}, {1}), Rat(0), Rat(2)},
        {pf({}, {1}), Rat(0), Rat(1, 2)},
        {pf({1}, {}), Rat(-3, 2), Rat(4, 3)},
        {pf({1}, {1}), Rat(1, 3), Rat(7, 2)},
    };
    const long N = 12;
    for (const Instance& inst : cases) {
        int fixed = gamma_sign(inst.a + 1) * gamma_sign(inst.b + 1);
        for (long x = 0; x <= 6; ++x) {
            int disc = sign_rat(hahn_admissibility_value(x, inst.a, inst.b, N, inst.F));
            int cont = jacobi_admissibility_sign(x, jp(inst.a, inst.b), inst.F);
            REQUIRE(disc == cont * fixed);
        }
    }
}

TEST_CASE("family wrapper") {
    XJacobiFamily fam(jp(Rat(0), Rat(2)), pf({}, {1}));
    REQUIRE(fam.u() == 1);
    REQUIRE(fam.w() == 2);
    const MultiPoly& P1 = fam.P(1);
    REQUIRE(&P1 == &fam.P(1));  // cached
    REQUIRE(P1 == x_jacobi(1, fam.params(), fam.pair()));
    REQUIRE(fam.omega() == omega_jacobi(fam.params(), fam.pair()));
    REQUIRE(fam.eigen_check(3));
    REQUIRE(fam.boundary(1) == Rat(1));
    REQUIRE(fam.admissible().admissible);
    REQUIRE(fam.darboux(2).removed == 1);
    REQUIRE(close_rel(fam.norm(0).computed, Float50(16) / 3, Float50("1e-8")));
    REQUIRE(fam.scan().part2_holds);
    REQUIRE_THROWS_AS(XJacobiFamily(jp(Rat(0), Rat(2)), pf({}, {})), ParamViolation);
}
