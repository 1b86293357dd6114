#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "xortho/errors.hpp"
#include "xortho/rational.hpp"

namespace xortho {

using FiniteSet = std::vector<long>;  // strictly increasing positive integers

inline void validate_finite_set(const FiniteSet& f, const std::string& label) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 1)
            throw ParamViolation(label + " contains a non-positive element");
        if (i > 0 && f[i] <= f[i - 1])
            throw ParamViolation(label + " is not strictly increasing");
    }
}

inline long binom2(long m) { return m * (m - 1) / 2; }

inline long set_sum(const FiniteSet& f) {
    long s = 0;
    for (long v : f) s += v;
    return s;
}

inline bool set_contains(const FiniteSet& f, long v) {
    return std::binary_search(f.begin(), f.end(), v);
}

// A pair of finite sets of positive integers. Constructions downstream
// require that not both components are empty; the type itself allows it
// so intermediate pairs (after element removal) stay representable.
struct PairF {
    FiniteSet f1;
    FiniteSet f2;

    PairF() = default;
    PairF(FiniteSet a, FiniteSet b) : f1(std::move(a)), f2(std::move(b)) {
        validate_finite_set(f1, "F1");
        validate_finite_set(f2, "F2");
    }

    std::size_t k1() const { return f1.size(); }
    std::size_t k2() const { return f2.size(); }
    std::size_t k() const { return f1.size() + f2.size(); }

    bool operator==(const PairF& o) const = default;

    std::string str() const {
        auto side = [](const FiniteSet& f) {
            std::string s = "{";
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(f[i]);
            }
            return s + "}";
        };
        return "(" + side(f1) + "," + side(f2) + ")";
    }

    // Removes the i-th element (1-based) of the requested component.
    PairF without(int component, std::size_t i) const {
        PairF out = *this;
        FiniteSet& side = component == 1 ? out.f1 : out.f2;
        if (i < 1 || i > side.size())
            throw ParamViolation("element index out of range in pair reduction");
        side.erase(side.begin() + static_cast<long>(i - 1));
        return out;
    }
};

// Offset of the index set: sum of both components minus the binomial
// corrections. Nonnegative for every valid pair.
inline long u_of(const PairF& F) {
    long u = set_sum(F.f1) + set_sum(F.f2) -
             binom2(static_cast<long>(F.k1()) + 1) - binom2(static_cast<long>(F.k2()));
    if (u < 0) throw NegativeResult("offset of malformed pair " + F.str());
    return u;
}

// Recurrence half-width; satisfies w = u + k1 + 1.
inline long w_of(const PairF& F) {
    return set_sum(F.f1) + set_sum(F.f2) - binom2(static_cast<long>(F.k1())) -
           binom2(static_cast<long>(F.k2())) + 1;
}

// Members of the index set up to and including the cutoff: the integers
// from the offset upward with the F1-shifted positions removed.
inline std::vector<long> sigma_of(const PairF& F, long cutoff) {
    const long u = u_of(F);
    std::vector<long> out;
    for (long m = u; m <= cutoff; ++m) {
        if (!set_contains(F.f1, m - u)) out.push_back(m);
    }
    return out;
}

inline bool sigma_contains(const PairF& F, long m) {
    const long u = u_of(F);
    if (m < u) return false;
    return !set_contains(F.f1, m - u);
}

// Truncated index set for a concrete N. Requires F1 to be a proper
// subset of {1..N}; the result always has exactly N - k1 + 1 members.
inline std::vector<long> sigma_N_of(const PairF& F, long N) {
    if (N < 1) throw ParamViolation("N must be a positive integer");
    for (long f : F.f1) {
        if (f > N) throw F1NotProper("F1 element " + std::to_string(f) + " exceeds N");
    }
    if (static_cast<long>(F.k1()) == N)
        throw F1NotProper("F1 equals the full segment {1..N}");
    const long u = u_of(F);
    std::vector<long> out = sigma_of(F, N + u);
    if (out.size() != static_cast<std::size_t>(N - static_cast<long>(F.k1()) + 1))
        throw Error("truncated index set has unexpected size");
    return out;
}

// Involution on nonempty finite sets: complement of the reflected set
// inside {1..max}. Self-inverse, preserves the maximum, and maps size
// |F| to max F - |F| + 1.
inline FiniteSet involution(const FiniteSet& F) {
    if (F.empty()) throw EmptySet("involution needs a nonempty set");
    const long mx = F.back();
    FiniteSet removed;
    for (long f : F) {
        long r = mx - f;
        if (r >= 1) removed.push_back(r);
    }
    std::sort(removed.begin(), removed.end());
    FiniteSet out;
    for (long v = 1; v <= mx; ++v) {
        if (!std::binary_search(removed.begin(), removed.end(), v)) out.push_back(v);
    }
    return out;
}

// Smallest index s with s < f_s; k+1 when F is the initial segment
// {1..k} (including the empty case, where it is 1).
inline long s_of(const FiniteSet& F) {
    const long k = static_cast<long>(F.size());
    for (long s = 1; s <= k; ++s) {
        if (s < F[static_cast<std::size_t>(s - 1)]) return s;
    }
    return k + 1;
}

// Downward shift: drops the leading initial-segment elements and lowers
// the remainder by s. Empty input and initial segments map to the empty set.
inline FiniteSet f_down(const FiniteSet& F) {
    const long s = s_of(F);
    const long k = static_cast<long>(F.size());
    FiniteSet out;
    for (long i = s; i <= k; ++i) out.push_back(F[static_cast<std::size_t>(i - 1)] - s);
    return out;
}

inline long s_of(const PairF& F) { return s_of(F.f1); }

inline PairF pair_down(const PairF& F) { return PairF(f_down(F.f1), F.f2); }

// Vandermonde product over ordered pairs of a finite set.
inline Rat vandermonde(const FiniteSet& F) {
    Rat acc(1);
    for (std::size_t i = 0; i < F.size(); ++i) {
        for (std::size_t j = i + 1; j < F.size(); ++j) acc *= Rat(F[j] - F[i]);
    }
    return acc;
}

// Parses a pair from the CLI syntax "F1=1,3;F2=2", with an empty side
// written as "F1=;F2=..." or a trailing "F2=".
inline PairF parse_pair(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw ParamViolation("pair spec needs ';' between components: '" + text + "'");
    const std::string left = text.substr(0, semi);
    const std::string right = text.substr(semi + 1);
    auto parse_side = [](const std::string& side, const std::string& tag) {
        if (side.substr(0, tag.size()) != tag)
            throw ParamViolation("pair component must start with '" + tag + "'");
        std::string body = side.substr(tag.size());
        FiniteSet out;
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string item = body.substr(pos, comma == std::string::npos
                                                    ? std::string::npos
                                                    : comma - pos);
            if (item.empty()) throw ParamViolation("empty element in pair spec");
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(item, &used);
            } catch (const std::exception&) {
                throw ParamViolation("unparsable pair element '" + item + "'");
            }
            if (used != item.size())
                throw ParamViolation("unparsable pair element '" + item + "'");
            out.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    };
    return PairF(parse_side(left, "F1="), parse_side(right, "F2="));
}

}  // namespace xortho
