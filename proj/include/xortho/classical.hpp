#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xortho/combinatorics.hpp"
#include "xortho/errors.hpp"
#include "xortho/linalg.hpp"
#include "xortho/multipoly.hpp"
#include "xortho/rational.hpp"

namespace xortho {

// The N parameter travels as a polynomial in the N variable so concrete
// values (constants), the symbolic case (the bare variable), and shifted
// cases like beta + N are handled uniformly.
using NPoly = MultiPoly;

inline NPoly n_concrete(const Rat& value) { return MultiPoly::constant(value); }
inline NPoly n_symbolic() { return var_N(); }

inline bool is_negative_integer(const Rat& r) {
    return is_integer(r) && num(r) <= -1;
}

// Shared parameter set for the discrete families. N is concrete when
// `N` holds a value, symbolic otherwise.
struct HahnParams {
    Rat alpha;
    Rat beta;
    std::optional<long> N;

    NPoly n_poly() const {
        return N ? n_concrete(Rat(*N)) : n_symbolic();
    }
    bool concrete() const { return N.has_value(); }
};

struct JacobiParams {
    Rat alpha;
    Rat beta;
};

// Baseline constraint shared by every construction: alpha, beta and
// alpha + beta must avoid all negative integers.
inline void validate_base_params(const Rat& alpha, const Rat& beta) {
    if (is_negative_integer(alpha))
        throw ParamViolation("alpha is a negative integer");
    if (is_negative_integer(beta))
        throw ParamViolation("beta is a negative integer");
    if (is_negative_integer(alpha + beta))
        throw ParamViolation("alpha + beta is a negative integer");
}

// Additional constraint when the second component of the pair is
// nonempty: beta - max(F2) - 1 must avoid the negative integers, which
// keeps the second-component nodes off the dual lattice and every
// beta-dependent factor of the leading coefficient nonzero.
inline void validate_pair_params(const Rat&, const Rat& beta, const PairF& F) {
    if (F.f2.empty()) return;
    if (is_negative_integer(beta - Rat(F.f2.back()) - 1))
        throw ParamViolation("beta - max(F2) - 1 is a negative integer (F2 nonempty)");
}

// Degree normality: alpha - beta must additionally avoid, for each i in
// F2, the integers -(i+1)..-2i; exactly then the closed-form leading
// coefficient is nonzero and the degree-n member really has degree n.
// Violations do not break the construction (every determinant identity
// survives), they only drop the degree, so this is a query rather than a
// hard gate.
inline bool pair_degree_normal(const Rat& alpha, const Rat& beta, const PairF& F) {
    for (long i : F.f2)
        if (is_integer_in(alpha - beta, -2 * i, -(i + 1))) return false;
    return true;
}

// Orthogonality-range constraint for concrete N: alpha and beta must
// avoid {-1..-N} and alpha + beta must avoid {-1..-2N-1}.
inline void validate_weight_params(const Rat& alpha, const Rat& beta, long N) {
    if (N < 1) throw ParamViolation("N must be a positive integer");
    if (is_integer_in(alpha, -N, -1))
        throw ParamViolation("alpha is an integer in {-1..-N}");
    if (is_integer_in(beta, -N, -1))
        throw ParamViolation("beta is an integer in {-1..-N}");
    if (is_integer_in(alpha + beta, -2 * N - 1, -1))
        throw ParamViolation("alpha + beta is an integer in {-1..-2N-1}");
}

// lambda(x) = x(x + alpha + beta + 1), the dual-family eigenvalue map.
inline MultiPoly lambda_poly(const Rat& alpha, const Rat& beta) {
    MultiPoly x = var_x();
    return x * (x + alpha + beta + Rat(1));
}

inline Rat lambda_val(const Rat& alpha, const Rat& beta, const Rat& x) {
    return x * (x + alpha + beta + 1);
}

// s_j^u(x) = (u - x)_j, a degree-j polynomial in x; u may involve N.
inline MultiPoly s_poly(long j, const MultiPoly& u) {
    return poch(u - var_x(), j);
}

// Leading coefficient of the degree-i member of the discrete family:
// (a + b + i + 1)_i / (a + 1)_i.
inline Rat lead_coeff_hahn(long i, const Rat& a, const Rat& b) {
    Rat denom = poch_rat(a + 1, i);
    if (denom == 0) throw ParamPole("(a+1)_i vanishes in leading coefficient");
    return poch_rat(a + b + i + 1, i) / denom;
}

// Degree-n member of the discrete family, as a polynomial in x (and N
// when the N-slot is non-constant). Computed termwise:
// sum_j (-n)_j (-x)_j (n+a+b+1)_j (-N+j)_{n-j} / ((a+1)_j j!).
// Negative n yields the zero polynomial by convention.
inline MultiPoly hahn(long n, const Rat& alpha, const Rat& beta, const NPoly& N) {
    if (n < 0) return MultiPoly::zero();
    MultiPoly x = var_x();
    MultiPoly acc;
    Rat scal(1);  // (-n)_j (n+a+b+1)_j / ((a+1)_j j!)
    for (long j = 0; j <= n; ++j) {
        if (j > 0) {
            Rat ap = alpha + j;  // (a+1)_j gains factor (a+j)
            if (ap == 0) throw ParamPole("(alpha+1)_j vanishes in series");
            scal *= Rat(-n + j - 1) * (Rat(n) + alpha + beta + Rat(j)) / (ap * Rat(j));
        }
        acc += scal * poch(-x, j) * poch(-N + Rat(j), n - j);
    }
    return acc;
}

// Degree-n member of the dual discrete family, as a polynomial in its
// lambda-argument (the x variable stands for that argument):
// sum_j (-1)^j (-n)_j (-N+j)_{n-j} / ((a+1)_j j!) prod_i (x - i(a+b+1+i)).
inline MultiPoly dual_hahn(long n, const Rat& alpha, const Rat& beta, const NPoly& N) {
    if (n < 0) return MultiPoly::zero();
    MultiPoly x = var_x();
    MultiPoly acc;
    Rat scal(1);  // (-1)^j (-n)_j / ((a+1)_j j!)
    MultiPoly zprod = MultiPoly::one();  // prod_{i=0}^{j-1} (x - i(a+b+1+i))
    for (long j = 0; j <= n; ++j) {
        if (j > 0) {
            Rat ap = alpha + j;
            if (ap == 0) throw ParamPole("(alpha+1)_j vanishes in series");
            scal *= Rat(-1) * Rat(-n + j - 1) / (ap * Rat(j));
            Rat i(j - 1);
            zprod *= (x - i * (alpha + beta + Rat(1) + i));
        }
        acc += scal * zprod * poch(-N + Rat(j), n - j);
    }
    return acc;
}

// Composition R_n(lambda(x)) as a polynomial in x.
inline MultiPoly dual_hahn_at_lambda(long n, const Rat& alpha, const Rat& beta,
                                     const NPoly& N) {
    return dual_hahn(n, alpha, beta, N).subst(Var::x, lambda_poly(alpha, beta));
}

// Three-term recurrence coefficients of the dual family:
// z R_n = A_n R_{n+1} + B_n R_n + C_n R_{n-1}.
struct ThreeTerm {
    Rat A;
    Rat B;
    Rat C;
};

inline ThreeTerm three_term_dual_hahn(long n, const Rat& alpha, const Rat& beta,
                                      const Rat& N) {
    Rat nn(n);
    ThreeTerm t;
    t.A = nn + alpha + 1;
    t.B = -(nn + alpha + 1) * (nn - N) - nn * (nn - beta - N - 1);
    t.C = nn * (nn - beta - N - 1) * (nn - N - 1);
    return t;
}

// Degree-n member of the continuous family:
// 2^{-n} sum_j binom(n+a, j) binom(n+b, n-j) (x-1)^{n-j} (x+1)^j.
inline MultiPoly jacobi(long n, const Rat& alpha, const Rat& beta) {
    if (n < 0) return MultiPoly::zero();
    MultiPoly x = var_x();
    MultiPoly acc;
    for (long j = 0; j <= n; ++j) {
        Rat c = binom_rat(Rat(n) + alpha, j) * binom_rat(Rat(n) + beta, n - j);
        if (c == 0) continue;
        acc += c * (x - Rat(1)).pow(static_cast<unsigned>(n - j)) *
               (x + Rat(1)).pow(static_cast<unsigned>(j));
    }
    return acc * pow_rat(Rat(1, 2), n);
}

// Point mass collection; points distinct, masses nonzero.
struct DiscreteMeasure {
    std::vector<std::pair<Rat, Rat>> atoms;

    void add(const Rat& point, const Rat& mass) {
        if (mass == 0) return;
        for (const auto& [p, m] : atoms) {
            if (p == point) throw Error("duplicate point in discrete measure");
        }
        atoms.emplace_back(point, mass);
    }

    Rat total_mass() const {
        Rat s(0);
        for (const auto& [p, m] : atoms) s += m;
        return s;
    }
};

inline Rat inner_product(const MultiPoly& p, const MultiPoly& q,
                         const DiscreteMeasure& mu) {
    Rat acc(0);
    for (const auto& [pt, mass] : mu.atoms) acc += p.eval_x(pt) * q.eval_x(pt) * mass;
    return acc;
}

// Mass of the dual weight at lambda(x):
// (2x+a+b+1)(a+1)_x(-N)_x N! / ((-1)^x (x+a+b+1)_{N+1} (b+1)_x x!).
inline Rat dual_hahn_mass(long x, const Rat& alpha, const Rat& beta, long N) {
    Rat numpart = (Rat(2 * x) + alpha + beta + 1) * poch_rat(alpha + 1, x) *
                  poch_rat(Rat(-N), x) * factorial_rat(N);
    Rat denpart = pow_rat(Rat(-1), x) * poch_rat(Rat(x) + alpha + beta + 1, N + 1) *
                  poch_rat(beta + 1, x) * factorial_rat(x);
    if (denpart == 0) throw ParamPole("vanishing denominator in dual weight mass");
    return numpart / denpart;
}

// Dual weight: mass dual_hahn_mass(x) at the point lambda(x), x = 0..N.
inline DiscreteMeasure dual_hahn_weight(const Rat& alpha, const Rat& beta, long N) {
    validate_weight_params(alpha, beta, N);
    DiscreteMeasure mu;
    for (long x = 0; x <= N; ++x)
        mu.add(lambda_val(alpha, beta, Rat(x)), dual_hahn_mass(x, alpha, beta, N));
    return mu;
}

// Primal weight: mass binom(x+a, x) binom(b+N-x, N-x) at x = 0..N.
inline DiscreteMeasure hahn_weight(const Rat& alpha, const Rat& beta, long N) {
    validate_weight_params(alpha, beta, N);
    DiscreteMeasure mu;
    for (long x = 0; x <= N; ++x)
        mu.add(Rat(x), binom_rat(Rat(x) + alpha, x) * binom_rat(beta + Rat(N - x), N - x));
    return mu;
}

// Squared norm of the degree-n primal member: (-N)_n^2 over the dual
// mass at lambda(n). Nonzero exactly for 0 <= n <= N.
inline Rat hahn_norm(long n, const Rat& alpha, const Rat& beta, long N) {
    if (n < 0 || n > N) return Rat(0);
    return pow_rat(poch_rat(Rat(-N), n), 2) / dual_hahn_mass(n, alpha, beta, N);
}

// Squared norm of the degree-n dual member:
// (-N)_n^2 / (binom(a+n, n) binom(b+N-n, N-n)).
inline Rat dual_hahn_norm(long n, const Rat& alpha, const Rat& beta, long N) {
    if (n < 0 || n > N) return Rat(0);
    Rat denom = binom_rat(alpha + Rat(n), n) * binom_rat(beta + Rat(N - n), N - n);
    if (denom == 0) throw ParamPole("vanishing binomial in dual norm");
    return pow_rat(poch_rat(Rat(-N), n), 2) / denom;
}

// Forward-shift identity: h_n(x+1) - h_n(x) equals
// (lambda(n)/(alpha+1)) h_{n-1} with all parameters shifted by one.
inline bool check_hahn_forward_shift(long n, const Rat& alpha, const Rat& beta,
                                     const NPoly& N) {
    MultiPoly lhs = hahn(n, alpha, beta, N).subst(Var::x, var_x() + Rat(1)) -
                    hahn(n, alpha, beta, N);
    Rat lam = lambda_val(alpha, beta, Rat(n));
    MultiPoly rhs = (lam / (alpha + 1)) * hahn(n - 1, alpha + 1, beta + 1, N - Rat(1));
    return lhs == rhs;
}

// s-weighted shift identity used for column reduction of the second
// determinant block, at column index j with block size k:
// s^{N-k+1}_{k+1-j}(x) s^{N+b-j+2}_{j-1}(x) h_n^{a,-b,b+N}(x+j-1)
//   - s^{N-k+1}_{k+2-j}(x) s^{N+b-j+3}_{j-2}(x) h_n^{a,-b,b+N}(x+j-2)
//   = ((a+n+1)(b-n)/(a+1)) s^{N-k+1}_{k+1-j}(x) s^{N+b-j+3}_{j-2}(x)
//       h_n^{a+1,-b-1,b+N}(x+j-2).
inline bool check_hahn_s_weighted(long n, long j, long k, const Rat& alpha,
                                  const Rat& beta, const NPoly& N) {
    MultiPoly x = var_x();
    NPoly bN = N + beta;
    MultiPoly h = hahn(n, alpha, -beta, bN);
    MultiPoly h_shift1 = h.subst(Var::x, x + Rat(j - 1));
    MultiPoly h_shift2 = h.subst(Var::x, x + Rat(j - 2));
    MultiPoly lhs = s_poly(k + 1 - j, N - Rat(k - 1)) * s_poly(j - 1, N + beta - Rat(j - 2)) * h_shift1 -
                    s_poly(k + 2 - j, N - Rat(k - 1)) * s_poly(j - 2, N + beta - Rat(j - 3)) * h_shift2;
    MultiPoly rhs = ((alpha + n + 1) * (beta - n) / (alpha + 1)) *
                    s_poly(k + 1 - j, N - Rat(k - 1)) * s_poly(j - 2, N + beta - Rat(j - 3)) *
                    hahn(n, alpha + 1, -beta - 1, bN).subst(Var::x, x + Rat(j - 2));
    return lhs == rhs;
}

// Reflection identity tying the dual family at reflected argument to the
// parameter-flipped family: R_n^{a,b,N}(lambda^{a,b}(x-b)) equals
// R_n^{a,-b,b+N}(lambda^{a,-b}(x)).
inline bool check_dual_hahn_reflection(long n, const Rat& alpha, const Rat& beta,
                                       const NPoly& N) {
    MultiPoly arg_l = lambda_poly(alpha, beta).subst(Var::x, var_x() - beta);
    MultiPoly lhs = dual_hahn(n, alpha, beta, N).subst(Var::x, arg_l);
    MultiPoly rhs = dual_hahn(n, alpha, -beta, N + beta)
                        .subst(Var::x, lambda_poly(alpha, -beta));
    return lhs == rhs;
}

// Duality between the primal and dual families:
// (-N)_m h_n(m) = (-N)_n R_m(lambda(n)).
inline bool check_hahn_duality(long n, long m, const Rat& alpha, const Rat& beta,
                               long N) {
    Rat lhs = poch_rat(Rat(-N), m) * hahn(n, alpha, beta, n_concrete(Rat(N))).eval_x(Rat(m));
    Rat rhs = poch_rat(Rat(-N), n) *
              dual_hahn(m, alpha, beta, n_concrete(Rat(N))).eval_x(lambda_val(alpha, beta, Rat(n)));
    return lhs == rhs;
}

// Derivative identity: (P_n^{a,b})' = ((n+a+b+1)/2) P_{n-1}^{a+1,b+1}.
inline bool check_jacobi_derivative(long n, const Rat& alpha, const Rat& beta) {
    MultiPoly lhs = jacobi(n, alpha, beta).derivative(Var::x);
    MultiPoly rhs = ((Rat(n) + alpha + beta + 1) / 2) * jacobi(n - 1, alpha + 1, beta + 1);
    return lhs == rhs;
}

// Mixed identity: ((1+x)P_n^{a,-b})' = (b+1)P_n^{a,-b} - (b-n)P_n^{a+1,-b-1}.
inline bool check_jacobi_mixed_derivative(long n, const Rat& alpha, const Rat& beta) {
    MultiPoly x = var_x();
    MultiPoly lhs = ((x + Rat(1)) * jacobi(n, alpha, -beta)).derivative(Var::x);
    MultiPoly rhs = (beta + 1) * jacobi(n, alpha, -beta) -
                    (beta - n) * jacobi(n, alpha + 1, -beta - 1);
    return lhs == rhs;
}

// k x k transform determinant: entry (i, j) is p_{n+j-1}(f_i).
inline Rat transform_phi(long n, const std::vector<MultiPoly>& ortho,
                         const std::vector<Rat>& F) {
    const std::size_t k = F.size();
    if (static_cast<std::size_t>(n) + k > ortho.size())
        throw Error("transform determinant needs members up to n+k-1");
    PolyMatrix m(k, std::vector<MultiPoly>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            m[i][j] = MultiPoly::constant(
                ortho[static_cast<std::size_t>(n) + j].eval_x(F[i]));
        }
    }
    return det_poly(m).constant_value();
}

// Bordered-determinant transform of an orthogonal sequence by a finite
// set of nodes: returns the polynomials orthogonal under the measure
// multiplied by the node annihilator. Each result of index n has degree
// n exactly when the k x k determinant of index n is nonzero.
inline std::vector<MultiPoly> christoffel(const DiscreteMeasure&,
                                          const std::vector<MultiPoly>& ortho,
                                          const std::vector<Rat>& F) {
    const std::size_t k = F.size();
    if (ortho.size() < k + 1) throw Error("transform needs at least k+1 members");
    for (std::size_t i = 0; i + 1 < F.size(); ++i) {
        if (F[i] >= F[i + 1]) throw Error("transform nodes must be increasing");
    }
    MultiPoly ann = MultiPoly::one();
    for (const Rat& f : F) ann *= (var_x() - f);

    std::vector<MultiPoly> out;
    for (std::size_t n = 0; n + k < ortho.size(); ++n) {
        PolyMatrix m(k + 1, std::vector<MultiPoly>(k + 1));
        for (std::size_t j = 0; j <= k; ++j) m[0][j] = ortho[n + j];
        for (std::size_t i = 1; i <= k; ++i) {
            for (std::size_t j = 0; j <= k; ++j) {
                m[i][j] = MultiPoly::constant(ortho[n + j].eval_x(F[i - 1]));
            }
        }
        MultiPoly q = exact_div(det_poly(m), ann);
        if (q.degree(Var::x) != static_cast<long>(n))
            throw DegeneratePhi("transform member dropped degree", static_cast<long>(n));
        out.push_back(std::move(q));
    }
    return out;
}

// Top-coefficient extraction in N: the exact value of the limit of
// p / N^d as N grows, as a polynomial in the remaining variables.
inline MultiPoly top_N_coeff(const MultiPoly& p, long d) {
    if (p.degree(Var::N) > d)
        throw Error("polynomial grows faster than the requested power of N");
    if (d < 0) throw Error("negative power of N requested");
    return p.coeff_poly(Var::N, static_cast<unsigned>(d));
}

}  // namespace xortho
