#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xortho/errors.hpp"
#include "xortho/rational.hpp"

namespace xortho {

// Fixed indeterminate universe. Every polynomial lives in Q[x, N, n];
// a variable is "absent" when its exponent is zero in every term.
inline constexpr std::size_t kNumVars = 3;

enum class Var : std::size_t { x = 0, N = 1, n = 2 };

inline constexpr std::array<const char*, kNumVars> kVarNames{"x", "N", "n"};

using Expo = std::array<unsigned, kNumVars>;

inline unsigned expo_total(const Expo& e) { return e[0] + e[1] + e[2]; }

// Graded lexicographic order with x > N > n: higher total degree wins,
// ties broken lexicographically with x most significant.
struct GrlexLess {
    bool operator()(const Expo& a, const Expo& b) const {
        unsigned da = expo_total(a), db = expo_total(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Sparse exact polynomial. Invariants: no zero coefficients stored; terms
// kept in canonical graded-lex order; all values immutable in practice
// (operations return new polynomials).
class MultiPoly {
public:
    using TermMap = std::map<Expo, Rat, GrlexLess>;

    MultiPoly() = default;

    static MultiPoly zero() { return MultiPoly(); }

    static MultiPoly constant(const Rat& c) {
        MultiPoly p;
        if (c != 0) p.terms_[Expo{0, 0, 0}] = c;
        return p;
    }

    static MultiPoly one() { return constant(Rat(1)); }

    static MultiPoly variable(Var v) {
        MultiPoly p;
        Expo e{0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        p.terms_[e] = Rat(1);
        return p;
    }

    static MultiPoly monomial(const Expo& e, const Rat& c) {
        MultiPoly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && expo_total(terms_.begin()->first) == 0);
    }

    // Value of a constant polynomial; throws if any variable is present.
    Rat constant_value() const {
        if (is_zero()) return Rat(0);
        if (!is_constant()) throw Error("constant_value on non-constant polynomial");
        return terms_.begin()->second;
    }

    // Degree in one variable; -1 for the zero polynomial.
    long degree(Var v) const {
        long d = -1;
        std::size_t i = static_cast<std::size_t>(v);
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[i]));
        return d;
    }

    long total_degree() const {
        if (terms_.empty()) return -1;
        return static_cast<long>(expo_total(terms_.rbegin()->first));
    }

    bool depends_on(Var v) const { return degree(v) > 0; }

    // Leading monomial and coefficient in the canonical graded-lex order.
    Expo leading_monomial() const {
        if (terms_.empty()) throw Error("leading_monomial of zero polynomial");
        return terms_.rbegin()->first;
    }

    Rat leading_coefficient() const {
        if (terms_.empty()) return Rat(0);
        return terms_.rbegin()->second;
    }

    Rat coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    // Polynomial coefficient of v^k, with v removed from the result.
    MultiPoly coeff_poly(Var v, unsigned k) const {
        std::size_t i = static_cast<std::size_t>(v);
        MultiPoly out;
        for (const auto& [e, c] : terms_) {
            if (e[i] != k) continue;
            Expo r = e;
            r[i] = 0;
            out.terms_[r] = c;
        }
        return out;
    }

    // Coefficient polynomial of the highest power of v.
    MultiPoly leading_coeff_in(Var v) const {
        long d = degree(v);
        if (d < 0) return MultiPoly();
        return coeff_poly(v, static_cast<unsigned>(d));
    }

    MultiPoly operator-() const {
        MultiPoly out(*this);
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    MultiPoly& operator*=(const MultiPoly& o) {
        MultiPoly out;
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
                out.add_term(e, ca * cb);
            }
        }
        terms_ = std::move(out.terms_);
        return *this;
    }

    MultiPoly& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    MultiPoly& operator/=(const Rat& s) {
        if (s == 0) throw Error("division of polynomial by zero scalar");
        for (auto& [e, c] : terms_) c /= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
    friend MultiPoly operator*(MultiPoly a, const Rat& s) { return a *= s; }
    friend MultiPoly operator*(const Rat& s, MultiPoly a) { return a *= s; }
    friend MultiPoly operator/(MultiPoly a, const Rat& s) { return a /= s; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned e) const {
        MultiPoly acc = one();
        MultiPoly base = *this;
        while (e != 0) {
            if (e & 1U) acc *= base;
            base *= base;
            e >>= 1U;
        }
        return acc;
    }

    // Substitutes an exact value for one variable.
    MultiPoly subst(Var v, const Rat& value) const {
        std::size_t i = static_cast<std::size_t>(v);
        MultiPoly out;
        for (const auto& [e, c] : terms_) {
            Expo r = e;
            r[i] = 0;
            out.add_term(r, c * pow_rat(value, static_cast<long>(e[i])));
        }
        return out;
    }

    // Substitutes a polynomial for one variable.
    MultiPoly subst(Var v, const MultiPoly& repl) const {
        std::size_t i = static_cast<std::size_t>(v);
        long d = degree(v);
        if (d <= 0 && !depends_on(v)) return *this;
        std::vector<MultiPoly> powers(static_cast<std::size_t>(d) + 1);
        powers[0] = one();
        for (long k = 1; k <= d; ++k) powers[static_cast<std::size_t>(k)] =
            powers[static_cast<std::size_t>(k - 1)] * repl;
        MultiPoly out;
        for (const auto& [e, c] : terms_) {
            Expo r = e;
            r[i] = 0;
            out += monomial(r, c) * powers[e[i]];
        }
        return out;
    }

    MultiPoly derivative(Var v) const {
        std::size_t i = static_cast<std::size_t>(v);
        MultiPoly out;
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Expo r = e;
            r[i] -= 1;
            out.add_term(r, c * Rat(e[i]));
        }
        return out;
    }

    // Antiderivative in v with zero constant term.
    MultiPoly antiderivative(Var v) const {
        std::size_t i = static_cast<std::size_t>(v);
        MultiPoly out;
        for (const auto& [e, c] : terms_) {
            Expo r = e;
            r[i] += 1;
            out.add_term(r, c / Rat(static_cast<long>(r[i])));
        }
        return out;
    }

    // Full evaluation; every variable the polynomial depends on must be
    // covered by the point.
    Rat eval(const Rat& x_val, const Rat& N_val, const Rat& n_val) const {
        Rat acc(0);
        for (const auto& [e, c] : terms_) {
            acc += c * pow_rat(x_val, e[0]) * pow_rat(N_val, e[1]) * pow_rat(n_val, e[2]);
        }
        return acc;
    }

    // Evaluation for the common univariate-in-x case.
    Rat eval_x(const Rat& x_val) const {
        if (depends_on(Var::N) || depends_on(Var::n))
            throw Error("eval_x on polynomial with other variables present");
        return eval(x_val, Rat(0), Rat(0));
    }

    std::vector<Var> vars_present() const {
        std::vector<Var> out;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            Var v = static_cast<Var>(i);
            for (const auto& [e, c] : terms_) {
                if (e[i] > 0) {
                    out.push_back(v);
                    break;
                }
            }
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < kNumVars; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += kVarNames[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            Rat ac = c < 0 ? -c : c;
            std::string coeff = to_string(ac);
            std::string piece;
            if (mono.empty()) piece = coeff;
            else if (ac == 1) piece = mono;
            else piece = coeff + "*" + mono;
            if (out.empty()) out = (c < 0 ? "-" : "") + piece;
            else out += (c < 0 ? " - " : " + ") + piece;
        }
        return out;
    }

private:
    void add_term(const Expo& e, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline MultiPoly operator+(MultiPoly a, const Rat& s) { return a += MultiPoly::constant(s); }
inline MultiPoly operator+(const Rat& s, MultiPoly a) { return a += MultiPoly::constant(s); }
inline MultiPoly operator-(MultiPoly a, const Rat& s) { return a -= MultiPoly::constant(s); }
inline MultiPoly operator-(const Rat& s, const MultiPoly& a) {
    return MultiPoly::constant(s) - a;
}

// Exact division. Succeeds exactly when q divides p; otherwise throws
// NotDivisible carrying the remainder reached.
inline MultiPoly exact_div(const MultiPoly& p, const MultiPoly& q) {
    if (q.is_zero()) throw Error("exact_div by zero polynomial");
    if (q.is_constant()) return p / q.constant_value();
    MultiPoly rem = p, quot;
    const Expo qe = q.leading_monomial();
    const Rat qc = q.leading_coefficient();
    while (!rem.is_zero()) {
        const Expo re = rem.leading_monomial();
        Expo me{};
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (re[i] < qe[i])
                throw NotDivisible("remainder " + rem.str() + " when dividing by " + q.str());
            me[i] = re[i] - qe[i];
        }
        MultiPoly t = MultiPoly::monomial(me, rem.leading_coefficient() / qc);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

inline bool divides(const MultiPoly& q, const MultiPoly& p) {
    try {
        exact_div(p, q);
        return true;
    } catch (const NotDivisible&) {
        return false;
    }
}

// Rising factorial of a polynomial: product of (base + i), i = 0..j-1.
inline MultiPoly poch(const MultiPoly& base, long j) {
    if (j < 0) throw Error("poch of polynomial with negative length");
    MultiPoly acc = MultiPoly::one();
    for (long i = 0; i < j; ++i) acc *= (base + Rat(i));
    return acc;
}

inline MultiPoly var_x() { return MultiPoly::variable(Var::x); }
inline MultiPoly var_N() { return MultiPoly::variable(Var::N); }
inline MultiPoly var_n() { return MultiPoly::variable(Var::n); }

}  // namespace xortho
