#pragma once

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "xortho/errors.hpp"
#include "xortho/multipoly.hpp"
#include "xortho/rational.hpp"

namespace xortho {

// Polynomial wire format: {"vars": [...], "terms": [{"exp": [...],
// "num": "...", "den": "..."}]}. Variables are listed in canonical order
// (x before N before n), restricted to those actually present; exponent
// vectors align with that list; integers travel as base-10 strings so
// arbitrary precision survives. Terms are emitted in descending canonical
// order, which makes serialization a canonical form.
inline nlohmann::json poly_to_json(const MultiPoly& p) {
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < kNumVars; ++i) {
        for (const auto& [e, c] : p.terms()) {
            if (e[i] > 0) {
                present.push_back(i);
                break;
            }
        }
    }
    nlohmann::json vars = nlohmann::json::array();
    for (std::size_t i : present) vars.push_back(kVarNames[i]);
    nlohmann::json terms = nlohmann::json::array();
    const auto& tm = p.terms();
    for (auto it = tm.rbegin(); it != tm.rend(); ++it) {
        nlohmann::json exp = nlohmann::json::array();
        for (std::size_t i : present) exp.push_back(it->first[i]);
        terms.push_back({{"exp", std::move(exp)},
                         {"num", num(it->second).str()},
                         {"den", den(it->second).str()}});
    }
    return {{"vars", std::move(vars)}, {"terms", std::move(terms)}};
}

inline MultiPoly poly_from_json(const nlohmann::json& j) {
    if (!j.contains("vars") || !j.contains("terms"))
        throw Error("polynomial JSON needs 'vars' and 'terms'");
    std::vector<std::size_t> slots;
    for (const auto& name : j.at("vars")) {
        const std::string s = name.get<std::string>();
        bool found = false;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (s == kVarNames[i]) {
                slots.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw Error("unknown polynomial variable '" + s + "'");
    }
    MultiPoly out;
    for (const auto& t : j.at("terms")) {
        const auto& exp = t.at("exp");
        if (exp.size() != slots.size()) throw Error("exponent vector length mismatch");
        Expo e{0, 0, 0};
        for (std::size_t i = 0; i < slots.size(); ++i)
            e[slots[i]] = exp[i].get<unsigned>();
        Int n(t.at("num").get<std::string>());
        Int d(t.at("den").get<std::string>());
        if (d == 0) throw Error("zero denominator in polynomial JSON");
        out += MultiPoly::monomial(e, Rat(n, d));
    }
    return out;
}

}  // namespace xortho
