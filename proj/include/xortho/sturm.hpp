#pragma once

#include <vector>

#include "xortho/errors.hpp"
#include "xortho/multipoly.hpp"

namespace xortho {
namespace detail {

// Dense coefficient vector (ascending powers) of a polynomial in x alone.
inline std::vector<Rat> uni_coeffs(const MultiPoly& p) {
    if (p.depends_on(Var::N) || p.depends_on(Var::n))
        throw PreconditionFailed("root counting needs a polynomial in x alone");
    long d = p.degree(Var::x);
    std::vector<Rat> c(static_cast<std::size_t>(d < 0 ? 1 : d + 1), Rat(0));
    for (long i = 0; i <= d; ++i)
        c[static_cast<std::size_t>(i)] = p.coeff_poly(Var::x, static_cast<unsigned>(i)).constant_value();
    return c;
}

inline void uni_trim(std::vector<Rat>& c) {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
}

inline bool uni_is_zero(const std::vector<Rat>& c) {
    return c.empty() || (c.size() == 1 && c[0] == 0);
}

inline Rat uni_eval(const std::vector<Rat>& c, const Rat& t) {
    Rat acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

inline std::vector<Rat> uni_derivative(const std::vector<Rat>& c) {
    if (c.size() <= 1) return {Rat(0)};
    std::vector<Rat> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Rat(static_cast<long>(i));
    return d;
}

// Scales so the leading coefficient is +-1; keeps chain entries small
// without changing any sign evaluation.
inline void uni_normalize(std::vector<Rat>& c) {
    uni_trim(c);
    if (uni_is_zero(c)) return;
    Rat lead = c.back();
    if (lead < 0) lead = -lead;
    for (auto& v : c) v /= lead;
}

inline std::vector<Rat> uni_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    while (!uni_is_zero(a) && a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
        a.pop_back();
        uni_trim(a);
    }
    if (a.empty()) a.assign(1, Rat(0));
    return a;
}

inline std::vector<Rat> uni_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    uni_trim(a);
    uni_trim(b);
    while (!uni_is_zero(b)) {
        std::vector<Rat> r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
        uni_normalize(b);
    }
    uni_normalize(a);
    return a;
}

// Exact quotient; the caller guarantees divisibility (used only to strip
// the gcd with the derivative, which always divides).
inline std::vector<Rat> uni_quot(std::vector<Rat> a, const std::vector<Rat>& b) {
    std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    while (!uni_is_zero(a) && a.size() >= b.size()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        uni_trim(a);
    }
    return q;
}

inline int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline std::size_t sign_variations(const std::vector<std::vector<Rat>>& chain, const Rat& t) {
    std::size_t v = 0;
    int prev = 0;
    for (const auto& c : chain) {
        int s = sign_of(uni_eval(c, t));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace detail

// Number of distinct real roots of p in the closed interval [a, b],
// counted without multiplicity via a Sturm chain of the square-free part.
// Endpoint roots are stripped off first so the chain is evaluated only at
// points where the polynomial is nonzero, where the variation count is
// exact. p must be a nonzero polynomial in x alone and a < b.
inline long sturm_root_count(const MultiPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw PreconditionFailed("root counting needs a nonzero polynomial");
    if (!(a < b)) throw PreconditionFailed("root counting needs an interval a < b");
    std::vector<Rat> c = detail::uni_coeffs(p);
    detail::uni_trim(c);
    if (c.size() == 1) return 0;

    std::vector<Rat> g = detail::uni_gcd(c, detail::uni_derivative(c));
    std::vector<Rat> sf = g.size() > 1 ? detail::uni_quot(c, g) : c;
    detail::uni_normalize(sf);

    long endpoint = 0;
    for (const Rat& t : {a, b}) {
        if (detail::uni_eval(sf, t) != 0) continue;
        ++endpoint;
        sf = detail::uni_quot(sf, {-t, Rat(1)});
        detail::uni_normalize(sf);
    }
    if (sf.size() == 1) return endpoint;

    std::vector<std::vector<Rat>> chain;
    chain.push_back(sf);
    chain.push_back(detail::uni_derivative(sf));
    detail::uni_normalize(chain.back());
    while (!detail::uni_is_zero(chain.back()) && chain.back().size() > 1) {
        std::vector<Rat> r = detail::uni_rem(chain[chain.size() - 2], chain.back());
        for (auto& v : r) v = -v;
        detail::uni_normalize(r);
        chain.push_back(std::move(r));
    }

    return endpoint + static_cast<long>(detail::sign_variations(chain, a)) -
           static_cast<long>(detail::sign_variations(chain, b));
}

}  // namespace xortho
