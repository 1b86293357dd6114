#pragma once

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "xortho/recurrence.hpp"
#include "xortho/serialize.hpp"

namespace xortho {

using Json = nlohmann::json;

// Exit codes, stable across releases:
//   0 success / every check passed
//   1 usage error (bad flags, malformed pair spec, empty pair)
//   2 parameter constraint violation
//   3 exact division failed inside a determinant construction
//   4 at least one verification check failed
//   5 any other library error
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParam = 2;
constexpr int kExitNotDivisible = 3;
constexpr int kExitCheckFailed = 4;
constexpr int kExitInternal = 5;

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Everything a command run needs, parsed losslessly: rationals stay "p/q"
// strings until handed to the exact parser, which rejects decimals.
struct RunConfig {
    std::string family;
    std::string alpha_str;
    std::string beta_str;
    long N = 0;  // 0 means absent
    std::string pair_spec;
    std::string range_str;
    std::string format = "json";
    std::string suite = "all";
    std::string cn_mode = "unit";
    std::string tol_norm = "1/100000000";
    std::string tol_cross = "1/10000000000";
    int threads = 1;
    bool perturb_upsilon = false;
};

namespace cli_detail {

inline std::pair<long, long> parse_range(const std::string& text) {
    auto parse_long = [&](const std::string& s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            throw UsageError("unparsable range bound '" + s + "'");
        }
        if (used != s.size()) throw UsageError("unparsable range bound '" + s + "'");
        return v;
    };
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        long v = parse_long(text);
        return {v, v};
    }
    long lo = parse_long(text.substr(0, dots));
    long hi = parse_long(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + text + "'");
    return {lo, hi};
}

inline PairF parse_pair_spec(const std::string& spec) {
    if (spec.empty()) throw UsageError("pair spec is empty; expected \"F1=...;F2=...\"");
    PairF F = [&] {
        try {
            return parse_pair(spec);
        } catch (const ParamViolation& e) {
            throw UsageError(e.what());
        }
    }();
    if (F.k() == 0)
        throw UsageError("pair spec selects no elements; at least one component must be nonempty");
    return F;
}

inline std::pair<long, long> range_or(const RunConfig& cfg, long lo, long hi) {
    if (cfg.range_str.empty()) return {lo, hi};
    return parse_range(cfg.range_str);
}

inline HahnParams hahn_params(const RunConfig& cfg) {
    if (cfg.N <= 0) throw UsageError("the discrete family needs --N (a positive integer)");
    return HahnParams{parse_rat(cfg.alpha_str), parse_rat(cfg.beta_str), cfg.N};
}

inline JacobiParams jacobi_params(const RunConfig& cfg) {
    return JacobiParams{parse_rat(cfg.alpha_str), parse_rat(cfg.beta_str)};
}

inline Json rat_json(const Rat& r) { return to_string(r); }

inline Json ratfn_json(const RationalFn& f) {
    return {{"num", poly_to_json(f.num)}, {"den", poly_to_json(f.den)}};
}

inline Json diffop_json(const DiffOp& op) {
    Json coeffs = Json::object();
    for (const auto& [shift, c] : op.coeffs) coeffs[std::to_string(shift)] = ratfn_json(c);
    return {{"kind", "difference"}, {"coeffs", std::move(coeffs)}};
}

inline Json derivop_json(const DerivOp& op) {
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < op.coeffs.size(); ++i) {
        if (op.coeffs[i].is_zero()) continue;
        coeffs.push_back({{"order", i}, {"coeff", ratfn_json(op.coeffs[i])}});
    }
    return {{"kind", "differential"}, {"coeffs", std::move(coeffs)}};
}

inline std::string f50_str(const Float50& v) { return v.str(20); }

// One verification check; status is PASS, FAIL, or SKIP.
struct Check {
    std::string suite;
    std::string name;
    std::string status;
    Json data = Json::object();
};

inline Check pass(std::string suite, std::string name, Json data = Json::object()) {
    return {std::move(suite), std::move(name), "PASS", std::move(data)};
}
inline Check fail(std::string suite, std::string name, Json data = Json::object()) {
    return {std::move(suite), std::move(name), "FAIL", std::move(data)};
}
inline Check skip(std::string suite, std::string name, std::string why) {
    return {std::move(suite), std::move(name), "SKIP", Json{{"reason", std::move(why)}}};
}

inline Check boolean_check(const std::string& suite, const std::string& name, bool ok) {
    return ok ? pass(suite, name) : fail(suite, name);
}

using Job = std::function<Check()>;

// Runs jobs over a fixed-size worker pool; results land in submission
// order regardless of completion order, so reports are deterministic.
inline std::vector<Check> run_jobs(const std::vector<Job>& jobs, int threads) {
    std::vector<Check> results(jobs.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            results[i] = jobs[i]();
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(threads, static_cast<int>(jobs.size()));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

// Wraps a job body so library errors become FAIL entries with the message
// as witness instead of aborting the whole report.
template <typename Fn>
Job guarded(std::string suite, std::string name, Fn body) {
    return [suite = std::move(suite), name = std::move(name), body = std::move(body)]() -> Check {
        try {
            return body();
        } catch (const Error& e) {
            return fail(suite, name, Json{{"error", e.what()}});
        }
    };
}

inline const char* kSuites[] = {"eigen",   "orthogonality", "duality",    "admissible",
                                "darboux", "limit",         "recurrence", "boundary"};

inline std::vector<std::string> selected_suites(const std::string& suite) {
    if (suite == "all") return {std::begin(kSuites), std::end(kSuites)};
    for (const char* s : kSuites)
        if (suite == s) return {suite};
    throw UsageError("unknown suite '" + suite + "'");
}

// Discrete-family verification jobs for one suite.
inline void hahn_suite_jobs(std::vector<Job>& jobs, const std::string& suite,
                            const std::shared_ptr<XHahnFamily>& fam, const RunConfig& cfg) {
    auto [lo, hi] = range_or(cfg, 0, fam->u() + 4);
    std::vector<long> grid;
    for (long n : fam->sigma_N())
        if (lo <= n && n <= hi) grid.push_back(n);

    if (suite == "eigen") {
        for (long n : grid)
            jobs.push_back(guarded(suite, "eigen n=" + std::to_string(n), [fam, suite, n] {
                return boolean_check(suite, "eigen n=" + std::to_string(n),
                                     fam->eigen_check(n));
            }));
    } else if (suite == "orthogonality") {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t j = i; j < grid.size(); ++j) {
                long r = grid[i], s = grid[j];
                std::string name = r == s ? "norm n=" + std::to_string(r)
                                          : "cross n=" + std::to_string(r) + ",m=" +
                                                std::to_string(s);
                jobs.push_back(guarded(suite, name, [fam, suite, name, r, s] {
                    DiscreteMeasure mu = fam->measure();
                    Rat acc(0);
                    for (const auto& [pt, mass] : mu.atoms)
                        acc += mass * fam->h(r).eval_x(pt) * fam->h(s).eval_x(pt);
                    if (r != s)
                        return acc == 0 ? pass(suite, name)
                                        : fail(suite, name, Json{{"integral", to_string(acc)}});
                    Rat want = h_norm_closed(r, fam->params(), fam->pair());
                    return acc == want
                               ? pass(suite, name, Json{{"norm", to_string(acc)}})
                               : fail(suite, name, Json{{"computed", to_string(acc)},
                                                        {"predicted", to_string(want)}});
                }));
            }
        }
    } else if (suite == "duality") {
        for (long v : grid) {
            std::string name = "duality v=" + std::to_string(v);
            jobs.push_back(guarded(suite, name, [fam, suite, name, v] {
                for (long u = 0; u <= 3; ++u)
                    if (!fam->duality(u, v))
                        return fail(suite, name, Json{{"u", u}, {"v", v}});
                return pass(suite, name);
            }));
        }
        long top = std::min(hi, *fam->params().N - static_cast<long>(fam->pair().k1()));
        for (long n = std::max(lo, 0L); n <= top; ++n) {
            std::string name = "determinant duality n=" + std::to_string(n);
            jobs.push_back(guarded(suite, name, [fam, suite, name, n] {
                bool ok = check_omega_phi_duality(n, fam->params(), fam->pair()) &&
                          check_lambda_psi_duality(n, fam->params(), fam->pair());
                return boolean_check(suite, name, ok);
            }));
        }
    } else if (suite == "admissible") {
        jobs.push_back(guarded(suite, "classification", [fam, suite] {
            HahnAdmissibility adm = fam->admissible();
            Json data{{"admissible", adm.admissible},
                      {"sign", adm.sign},
                      {"witness", adm.witness},
                      {"stable", adm.stable}};
            // consistency: the witness marks a genuine sign conflict (either
            // an adjacent strict flip landing there, or a point disagreeing
            // with the leading sign across zeros)
            bool ok = true;
            if (adm.admissible) {
                ok = adm.witness < 0;
            } else {
                const HahnParams& p = fam->params();
                const PairF& F = fam->pair();
                auto s = [&](long x) {
                    return sign_rat(hahn_admissibility_value(x, p.alpha, p.beta, *p.N, F));
                };
                int sw = adm.witness >= 0 ? s(adm.witness) : 0;
                bool flip = adm.witness >= 1 && s(adm.witness - 1) * sw < 0;
                ok = adm.witness >= 0 && sw != 0 && (flip || sw != adm.sign);
            }
            return ok ? pass(suite, "classification", std::move(data))
                      : fail(suite, "classification", std::move(data));
        }));
    } else if (suite == "darboux") {
        if (fam->pair().f2.empty()) {
            jobs.push_back([suite] {
                return skip(suite, "factorization", "the second component is empty");
            });
            return;
        }
        jobs.push_back(guarded(suite, "operator factorization", [fam, suite] {
            return boolean_check(suite, "operator factorization",
                                 check_darboux_hahn_ops(fam->params(), fam->pair()));
        }));
        for (long n = 0; n <= 3; ++n) {
            std::string name = "intertwining n=" + std::to_string(n);
            jobs.push_back(guarded(suite, name, [fam, suite, name, n] {
                return boolean_check(
                    suite, name, check_darboux_hahn_intertwine(n, fam->params(), fam->pair()));
            }));
        }
    } else if (suite == "limit") {
        jobs.push_back([suite] {
            return skip(suite, "limit", "runs on the continuous family");
        });
    } else if (suite == "recurrence") {
        long rlo = lo, rhi = hi;
        bool perturb = cfg.perturb_upsilon;
        jobs.push_back(guarded(suite, "relation", [fam, suite, rlo, rhi, perturb] {
            MultiPoly ups = upsilon_hahn(fam->params(), fam->pair(), false);
            if (perturb) ups += var_x();
            long deg = ups.degree(Var::x);
            RecurrenceReport rep = verify_recurrence(*fam, ups, rlo, rhi);
            Json rows = Json::array();
            for (const auto& chk : rep.checks) {
                Json row{{"n", chk.n},
                         {"status", chk.skipped ? "SKIP" : (chk.ok ? "PASS" : "FAIL")}};
                if (!chk.note.empty()) row["note"] = chk.note;
                rows.push_back(std::move(row));
            }
            Json data{{"order", rep.order}, {"checks", std::move(rows)}};
            if (deg < fam->w())
                data["note"] = "degenerate eigenvalue polynomial of degree " +
                               std::to_string(deg) + "; outer coefficients vanish";
            return rep.all_ok ? pass(suite, "relation", std::move(data))
                              : fail(suite, "relation", std::move(data));
        }));
    } else if (suite == "boundary") {
        jobs.push_back([suite] {
            return skip(suite, "boundary", "endpoint factorization is a continuous-side check");
        });
    }
}

// Continuous-family verification jobs for one suite.
inline void jacobi_suite_jobs(std::vector<Job>& jobs, const std::string& suite,
                              const std::shared_ptr<XJacobiFamily>& fam,
                              const RunConfig& cfg) {
    auto [lo, hi] = range_or(cfg, 0, fam->u() + 4);
    std::vector<long> grid;
    for (long n = std::max(lo, 0L); n <= hi; ++n)
        if (sigma_contains(fam->pair(), n)) grid.push_back(n);

    if (suite == "eigen") {
        for (long n : grid)
            jobs.push_back(guarded(suite, "eigen n=" + std::to_string(n), [fam, suite, n] {
                return boolean_check(suite, "eigen n=" + std::to_string(n),
                                     fam->eigen_check(n));
            }));
    } else if (suite == "orthogonality") {
        // indices count from the bottom of the family (degree m + u_F)
        auto [mlo, mhi] = range_or(cfg, 0, 3);
        Float50 tol_n = to_float50(parse_rat(cfg.tol_norm));
        Float50 tol_c = to_float50(parse_rat(cfg.tol_cross));
        std::vector<long> ms;
        for (long m = std::max(mlo, 0L); m <= mhi; ++m)
            if (!set_contains(fam->pair().f1, m)) ms.push_back(m);
        for (long m : ms) {
            std::string name = "norm m=" + std::to_string(m);
            jobs.push_back(guarded(suite, name, [fam, suite, name, m, tol_n] {
                JacobiNorm nm = fam->norm(m);
                Float50 rel = abs(nm.computed - nm.predicted) / abs(nm.predicted);
                Json data{{"computed", f50_str(nm.computed)},
                          {"predicted", f50_str(nm.predicted)},
                          {"rel_error", f50_str(rel)}};
                return rel <= tol_n ? pass(suite, name, std::move(data))
                                    : fail(suite, name, std::move(data));
            }));
        }
        for (std::size_t i = 0; i < ms.size(); ++i) {
            for (std::size_t j = i + 1; j < ms.size(); ++j) {
                long m1 = ms[i], m2 = ms[j];
                std::string name =
                    "cross m=" + std::to_string(m1) + ",m'=" + std::to_string(m2);
                jobs.push_back(guarded(suite, name, [fam, suite, name, m1, m2, tol_c] {
                    const JacobiParams& p = fam->params();
                    const PairF& F = fam->pair();
                    Float50 scale = sqrt(jacobi_admissibility_value(m1, p, F) *
                                         jacobi_admissibility_value(m2, p, F) /
                                         (to_float50(factorial_rat(m1)) *
                                          to_float50(factorial_rat(m2)))) *
                                    pow(Float50(2), to_float50(p.alpha + p.beta + 1));
                    Float50 integral =
                        jacobi_cross_integral(p, F, m1, m2, tol_c * scale);
                    Float50 rel = abs(integral) / scale;
                    Json data{{"integral", f50_str(integral)}, {"rel_error", f50_str(rel)}};
                    return rel <= tol_c ? pass(suite, name, std::move(data))
                                        : fail(suite, name, std::move(data));
                }));
            }
        }
    } else if (suite == "duality") {
        jobs.push_back([suite] {
            return skip(suite, "duality", "runs on the discrete family");
        });
    } else if (suite == "admissible") {
        jobs.push_back(guarded(suite, "classification", [fam, suite] {
            ConvthReport rep = fam->scan();
            Json data{{"admissible", rep.admissibility.admissible},
                      {"witness", rep.admissibility.witness},
                      {"alpha_cond", rep.alpha_cond},
                      {"beta_cond", rep.beta_cond},
                      {"tech_cond", rep.tech_cond},
                      {"omega_roots", rep.omega_roots}};
            bool ok = rep.necessity_holds && rep.part1_holds && rep.part2_holds;
            return ok ? pass(suite, "classification", std::move(data))
                      : fail(suite, "classification", std::move(data));
        }));
    } else if (suite == "darboux") {
        for (int side : {1, 2}) {
            const FiniteSet& comp = side == 1 ? fam->pair().f1 : fam->pair().f2;
            std::string name = "operator factorization side=" + std::to_string(side);
            if (comp.empty()) {
                jobs.push_back([suite, name, side] {
                    return skip(suite, name,
                                "component " + std::to_string(side) + " is empty");
                });
                continue;
            }
            jobs.push_back(guarded(suite, name, [fam, suite, name, side] {
                return boolean_check(
                    suite, name, check_darboux_jacobi_ops(fam->params(), fam->pair(), side));
            }));
            for (long n = 0; n <= 2; ++n) {
                std::string iname =
                    "intertwining side=" + std::to_string(side) + " n=" + std::to_string(n);
                jobs.push_back(guarded(suite, iname, [fam, suite, iname, side, n] {
                    return boolean_check(suite, iname,
                                         check_darboux_jacobi_intertwine(
                                             n, fam->params(), fam->pair(), side));
                }));
            }
        }
    } else if (suite == "limit") {
        const Rat a = fam->params().alpha;
        const Rat b = fam->params().beta;
        for (long n : grid) {
            std::string name = "member limit n=" + std::to_string(n);
            jobs.push_back(guarded(suite, name, [fam, suite, name, n, a, b] {
                return boolean_check(suite, name, limit_from_hahn(n, fam->pair(), a, b));
            }));
        }
        jobs.push_back(guarded(suite, "determinant limit", [fam, suite, a, b] {
            return boolean_check(suite, "determinant limit",
                                 limit_from_hahn_omega(fam->pair(), a, b));
        }));
        jobs.push_back(guarded(suite, "difference limit", [fam, suite, a, b] {
            return boolean_check(suite, "difference limit",
                                 limit_from_hahn_omega_differences(fam->pair(), a, b));
        }));
        jobs.push_back(guarded(suite, "eigenvalue polynomial limit", [fam, suite, a, b] {
            Json data{{"constant", to_string(upsilon_limit_constant(a, fam->pair()))}};
            return upsilon_limit_check(a, b, fam->pair())
                       ? pass(suite, "eigenvalue polynomial limit", std::move(data))
                       : fail(suite, "eigenvalue polynomial limit", std::move(data));
        }));
    } else if (suite == "recurrence") {
        long rlo = lo, rhi = hi;
        bool perturb = cfg.perturb_upsilon;
        jobs.push_back(guarded(suite, "relation", [fam, suite, rlo, rhi, perturb] {
            MultiPoly ups = upsilon_jacobi(fam->params(), fam->pair(), false);
            if (perturb) ups += var_x();
            long deg = ups.degree(Var::x);
            RecurrenceReport rep = verify_recurrence(*fam, ups, rlo, rhi);
            Json rows = Json::array();
            for (const auto& chk : rep.checks) {
                Json row{{"n", chk.n},
                         {"status", chk.skipped ? "SKIP" : (chk.ok ? "PASS" : "FAIL")}};
                if (!chk.note.empty()) row["note"] = chk.note;
                rows.push_back(std::move(row));
            }
            Json data{{"order", rep.order}, {"checks", std::move(rows)}};
            if (deg < fam->w())
                data["note"] = "degenerate eigenvalue polynomial of degree " +
                               std::to_string(deg) + "; outer coefficients vanish";
            return rep.all_ok ? pass(suite, "relation", std::move(data))
                              : fail(suite, "relation", std::move(data));
        }));
    } else if (suite == "boundary") {
        for (int at : {1, -1}) {
            std::string name = std::string("endpoint at=") + (at == 1 ? "+1" : "-1");
            jobs.push_back(guarded(suite, name, [fam, suite, name, at] {
                Rat closed = fam->boundary(at);
                Rat direct = fam->omega().eval_x(Rat(at));
                Json data{{"closed", to_string(closed)}, {"direct", to_string(direct)}};
                return closed == direct ? pass(suite, name, std::move(data))
                                        : fail(suite, name, std::move(data));
            }));
        }
    }
}

inline Json common_header(const RunConfig& cfg, const std::string& command, const PairF& F) {
    Json j;
    j["schema"] = "xortho/1";
    j["command"] = command;
    j["family"] = cfg.family;
    j["alpha"] = to_string(parse_rat(cfg.alpha_str));
    j["beta"] = to_string(parse_rat(cfg.beta_str));
    if (cfg.N > 0) j["N"] = cfg.N;
    j["pair"] = F.str();
    j["u"] = u_of(F);
    j["w"] = w_of(F);
    return j;
}

inline void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

inline std::string csv_field(const Rat& r, bool numerator) {
    return (numerator ? num(r) : den(r)).str();
}

}  // namespace cli_detail

// Emits family members, the companion determinant, and the second order
// operator coefficients for the requested degree range.
inline int cmd_gen(const RunConfig& cfg) {
    using namespace cli_detail;
    PairF F = parse_pair_spec(cfg.pair_spec);
    if (cfg.range_str.empty()) throw UsageError("gen needs --n (a degree range \"lo..hi\")");
    auto [lo, hi] = parse_range(cfg.range_str);

    Json out = common_header(cfg, "gen", F);
    std::vector<std::pair<long, const MultiPoly*>> members;
    std::shared_ptr<XHahnFamily> hf;
    std::shared_ptr<XJacobiFamily> jf;
    if (cfg.family == "xhahn") {
        hf = std::make_shared<XHahnFamily>(hahn_params(cfg), F);
        for (long n : hf->sigma_N())
            if (lo <= n && n <= hi) members.emplace_back(n, &hf->h(n));
        out["omega"] = poly_to_json(hf->omega());
        out["operator"] = diffop_json(hf->op());
    } else {
        jf = std::make_shared<XJacobiFamily>(jacobi_params(cfg), F);
        for (long n = std::max(lo, 0L); n <= hi; ++n)
            if (sigma_contains(F, n)) members.emplace_back(n, &jf->P(n));
        out["omega"] = poly_to_json(jf->omega());
        out["operator"] = derivop_json(jf->op());
    }

    if (cfg.format == "json") {
        Json polys = Json::array();
        for (const auto& [n, p] : members)
            polys.push_back({{"n", n}, {"degree", p->degree(Var::x)}, {"poly", poly_to_json(*p)}});
        out["polynomials"] = std::move(polys);
        emit(out);
    } else if (cfg.format == "csv") {
        std::cout << "n,x_exp,N_exp,num,den\n";
        for (const auto& [n, p] : members) {
            const auto& tm = p->terms();
            for (auto it = tm.rbegin(); it != tm.rend(); ++it)
                std::cout << n << "," << it->first[0] << "," << it->first[1] << ","
                          << num(it->second).str() << "," << den(it->second).str() << "\n";
        }
    } else if (cfg.format == "pretty") {
        const char* sym = cfg.family == "xhahn" ? "h" : "P";
        for (const auto& [n, p] : members)
            std::cout << sym << "_" << n << "(x) = " << p->str() << "\n";
    } else {
        throw UsageError("unknown format '" + cfg.format + "'");
    }
    return kExitOk;
}

// Runs the selected verification suites and emits a machine-readable
// report; exits nonzero when any check fails.
inline int cmd_verify(const RunConfig& cfg) {
    using namespace cli_detail;
    if (cfg.format != "json" && cfg.format != "pretty")
        throw UsageError("verify emits json or pretty");
    PairF F = parse_pair_spec(cfg.pair_spec);
    std::vector<std::string> suites = selected_suites(cfg.suite);

    std::vector<Job> jobs;
    if (cfg.family == "xhahn") {
        auto fam = std::make_shared<XHahnFamily>(hahn_params(cfg), F);
        for (const std::string& s : suites) hahn_suite_jobs(jobs, s, fam, cfg);
    } else {
        auto fam = std::make_shared<XJacobiFamily>(jacobi_params(cfg), F);
        for (const std::string& s : suites) jacobi_suite_jobs(jobs, s, fam, cfg);
    }
    std::vector<Check> checks = run_jobs(jobs, cfg.threads);

    bool all_pass = true;
    Json suites_json = Json::array();
    for (const std::string& s : suites) {
        Json entries = Json::array();
        bool suite_pass = true;
        for (const Check& c : checks) {
            if (c.suite != s) continue;
            Json e{{"name", c.name}, {"status", c.status}};
            if (!c.data.empty()) e["witness"] = c.data;
            if (c.status == "FAIL") suite_pass = false;
            entries.push_back(std::move(e));
        }
        all_pass = all_pass && suite_pass;
        suites_json.push_back(
            {{"suite", s}, {"pass", suite_pass}, {"checks", std::move(entries)}});
    }

    Json out = common_header(cfg, "verify", F);
    out["suites"] = std::move(suites_json);
    out["all_pass"] = all_pass;
    if (cfg.format == "pretty") {
        for (const Check& c : checks)
            std::cout << c.status << " " << c.suite << ": " << c.name << "\n";
        std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    } else {
        emit(out);
    }
    return all_pass ? kExitOk : kExitCheckFailed;
}

// Classifies admissibility and reports the verdict with its witness; a
// NotAdmissible verdict is a successful classification, not a failure.
inline int cmd_admissible(const RunConfig& cfg) {
    using namespace cli_detail;
    PairF F = parse_pair_spec(cfg.pair_spec);
    Json out = common_header(cfg, "admissible", F);
    if (cfg.family == "xhahn") {
        HahnAdmissibility adm = hahn_admissible(hahn_params(cfg), F);
        out["admissible"] = adm.admissible;
        out["sign"] = adm.sign;
        out["witness"] = adm.witness;
        out["stable"] = adm.stable;
    } else {
        JacobiParams p = jacobi_params(cfg);
        JacobiAdmissibility adm = jacobi_admissible(p, F);
        out["admissible"] = adm.admissible;
        out["witness"] = adm.witness;
    }
    emit(out);
    return kExitOk;
}

// Emits the eigenvalue polynomial and the recovered coefficient table.
inline int cmd_recurrence_table(const RunConfig& cfg) {
    using namespace cli_detail;
    PairF F = parse_pair_spec(cfg.pair_spec);
    if (cfg.range_str.empty())
        throw UsageError("recurrence-table needs --n (a degree range \"lo..hi\")");
    auto [lo, hi] = parse_range(cfg.range_str);
    CnMode mode;
    if (cfg.cn_mode == "unit") mode = CnMode::unit;
    else if (cfg.cn_mode == "degree") mode = CnMode::degree;
    else throw UsageError("unknown normalization '" + cfg.cn_mode + "' (unit or degree)");

    Recurrence rec;
    if (cfg.family == "xhahn") {
        XHahnFamily fam(hahn_params(cfg), F);
        rec = build_recurrence(fam, lo, hi, mode);
    } else {
        XJacobiFamily fam(jacobi_params(cfg), F);
        rec = build_recurrence(fam, lo, hi, mode);
    }
    const long w = (rec.order - 1) / 2;

    if (cfg.format == "csv") {
        std::cout << "n,j,num,den\n";
        for (const auto& [n, coeffs] : rec.coeffs_by_n)
            for (long j = -w; j <= w; ++j) {
                const Rat& a = coeffs[static_cast<std::size_t>(j + w)];
                std::cout << n << "," << j << "," << num(a).str() << "," << den(a).str()
                          << "\n";
            }
    } else if (cfg.format == "json") {
        Json out = common_header(cfg, "recurrence-table", F);
        out["order"] = rec.order;
        out["cn"] = cfg.cn_mode;
        out["upsilon"] = poly_to_json(rec.upsilon);
        Json rows = Json::array();
        for (const auto& [n, coeffs] : rec.coeffs_by_n) {
            Json cj = Json::array();
            for (long j = -w; j <= w; ++j) {
                const Rat& a = coeffs[static_cast<std::size_t>(j + w)];
                cj.push_back({{"j", j}, {"num", num(a).str()}, {"den", den(a).str()}});
            }
            rows.push_back({{"n", n}, {"coeffs", std::move(cj)}});
        }
        out["rows"] = std::move(rows);
        emit(out);
    } else if (cfg.format == "pretty") {
        std::cout << "order " << rec.order << ", upsilon = " << rec.upsilon.str() << "\n";
        for (const auto& [n, coeffs] : rec.coeffs_by_n) {
            std::cout << "n=" << n << ":";
            for (const Rat& a : coeffs) std::cout << " " << to_string(a);
            std::cout << "\n";
        }
    } else {
        throw UsageError("unknown format '" + cfg.format + "'");
    }
    return kExitOk;
}

// Checks the discrete-to-continuous limit identities for one pair with N
// symbolic: members over the requested range, the companion determinant,
// its difference quotients, and the eigenvalue polynomial.
inline int cmd_limit_check(const RunConfig& cfg) {
    using namespace cli_detail;
    PairF F = parse_pair_spec(cfg.pair_spec);
    Rat a = parse_rat(cfg.alpha_str);
    Rat b = parse_rat(cfg.beta_str);
    auto [lo, hi] = range_or(cfg, u_of(F), u_of(F) + 2);

    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        checks.push_back({{"name", name}, {"status", ok ? "PASS" : "FAIL"}});
        all = all && ok;
    };
    for (long n = std::max(lo, 0L); n <= hi; ++n) {
        if (!sigma_contains(F, n)) continue;
        record("member limit n=" + std::to_string(n), limit_from_hahn(n, F, a, b));
    }
    record("determinant limit", limit_from_hahn_omega(F, a, b));
    record("difference limit", limit_from_hahn_omega_differences(F, a, b));
    record("eigenvalue polynomial limit", upsilon_limit_check(a, b, F));

    Json out;
    out["schema"] = "xortho/1";
    out["command"] = "limit-check";
    out["alpha"] = to_string(a);
    out["beta"] = to_string(b);
    out["pair"] = F.str();
    out["constant"] = to_string(upsilon_limit_constant(a, F));
    out["checks"] = std::move(checks);
    out["all_pass"] = all;
    emit(out);
    return all ? kExitOk : kExitCheckFailed;
}

inline int cli_main(int argc, char** argv) {
    using namespace cli_detail;
    RunConfig cfg;
    if (const char* env = std::getenv("XORTHO_THREADS")) {
        try {
            cfg.threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "ignoring unparsable XORTHO_THREADS='" << env << "'\n";
        }
    }

    CLI::App app{"exact construction and verification of exceptional orthogonal polynomials"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 ok/all-pass, 1 usage, 2 parameter violation, "
               "3 exact division failure, 4 check failed, 5 internal error");

    auto add_family = [&](CLI::App* c) {
        c->add_option("family", cfg.family, "xhahn or xjacobi")
            ->required()
            ->check(CLI::IsMember({"xhahn", "xjacobi"}));
    };
    auto add_params = [&](CLI::App* c) {
        c->add_option("--alpha", cfg.alpha_str, "first parameter, rational \"p/q\"")
            ->required();
        c->add_option("--beta", cfg.beta_str, "second parameter, rational \"p/q\"")
            ->required();
        c->add_option("--N", cfg.N, "grid size for the discrete family");
        c->add_option("--F", cfg.pair_spec, "pair spec \"F1=a,b;F2=c\"")->required();
    };

    CLI::App* gen = app.add_subcommand("gen", "emit family members, determinant, operator");
    add_family(gen);
    add_params(gen);
    gen->add_option("--n", cfg.range_str, "degree range \"lo..hi\"");
    gen->add_option("--format", cfg.format, "json | csv | pretty");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_family(verify);
    add_params(verify);
    verify->add_option("--n", cfg.range_str, "index range \"lo..hi\"");
    verify->add_option("--suite", cfg.suite,
                       "eigen | orthogonality | duality | admissible | darboux | limit | "
                       "recurrence | boundary | all");
    verify->add_option("--format", cfg.format, "json | pretty");
    verify->add_option("--tol-norm", cfg.tol_norm, "relative norm tolerance, rational");
    verify->add_option("--tol-cross", cfg.tol_cross, "relative cross tolerance, rational");
    verify->add_option("--threads", cfg.threads, "worker threads (default XORTHO_THREADS)");
    verify->add_flag("--perturb-upsilon", cfg.perturb_upsilon,
                     "negative control: shift the eigenvalue polynomial by x");

    CLI::App* adm = app.add_subcommand("admissible", "classify admissibility");
    add_family(adm);
    add_params(adm);

    CLI::App* table = app.add_subcommand("recurrence-table", "emit recurrence coefficients");
    add_family(table);
    add_params(table);
    table->add_option("--n", cfg.range_str, "degree range \"lo..hi\"");
    table->add_option("--cn", cfg.cn_mode, "normalization: unit | degree");
    table->add_option("--format", cfg.format, "json | csv | pretty");

    CLI::App* lim = app.add_subcommand("limit-check", "check discrete-to-continuous limits");
    lim->add_option("--alpha", cfg.alpha_str, "first parameter, rational \"p/q\"")->required();
    lim->add_option("--beta", cfg.beta_str, "second parameter, rational \"p/q\"")->required();
    lim->add_option("--F", cfg.pair_spec, "pair spec \"F1=a,b;F2=c\"")->required();
    lim->add_option("--n", cfg.range_str, "member degree range \"lo..hi\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*adm) return cmd_admissible(cfg);
        if (*table) return cmd_recurrence_table(cfg);
        if (*lim) return cmd_limit_check(cfg);
        throw UsageError("no command selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParamViolation& e) {
        std::cerr << e.what() << "\n";
        return kExitParam;
    } catch (const NotDivisible& e) {
        std::cerr << e.what() << "\n";
        return kExitNotDivisible;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace xortho
