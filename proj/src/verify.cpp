#include "cpa/catalog.hpp"

#include "cpa/errors.hpp"
#include "cpa/linear.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cpa {

using nlohmann::json;

namespace {

using Vec = std::vector<RatFunc>;

void add_unique(std::vector<Poly>& out, const RatFunc& x) {
    if (x.is_zero()) return;
    Poly g = x.numerator().normalized();
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
}

json poly_list(const std::vector<Poly>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

json matrix_json(const Matrix<RatFunc>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(row);
    }
    return rows;
}

std::vector<Matrix<RatFunc>> transposed(const std::vector<Matrix<RatFunc>>& ms) {
    std::vector<Matrix<RatFunc>> out;
    for (const auto& m : ms) out.push_back(m.transposed());
    return out;
}

// Coefficient vectors of each monomial in the family symbols.
std::vector<Vec> monomial_vectors(const std::vector<Matrix<RatFunc>>& printed, const std::vector<std::string>& pair_params) {
    Vec fam = flatten(printed);
    std::size_t L = fam.size();
    std::map<std::string, Vec> coeffs;
    for (std::size_t idx = 0; idx < L; ++idx) {
        const RatFunc& x = fam[idx];
        if (x.is_zero()) continue;
        const auto& den = x.denominator();
        for (const auto& v : den.variables())
            if (std::find(pair_params.begin(), pair_params.end(), v) == pair_params.end())
                throw Error("printed entry " + x.to_string() + " has a family symbol in a denominator");
        const auto& vars = x.numerator().variables();
        std::vector<bool> is_symbol(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v)
            is_symbol[v] = std::find(pair_params.begin(), pair_params.end(), vars[v]) == pair_params.end();
        for (const auto& [e, c] : x.numerator().terms()) {
            std::string key;
            Exponents rest = e;
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (is_symbol[v] && e[v]) {
                    key += vars[v] + "^" + std::to_string(e[v]) + " ";
                    rest[v] = 0;
                }
            auto& vec = coeffs.try_emplace(key, Vec(L)).first->second;
            vec[idx] += RatFunc(Poly::from_terms(vars, {{rest, c}}), den);
        }
    }
    std::vector<Vec> out;
    for (auto& [k, v] : coeffs)
        if (!all_zero(v)) out.push_back(std::move(v));
    return out;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t L) {
    std::size_t ra = rank_of(a, L), rb = rank_of(b, L);
    if (ra != rb) return false;
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    return rank_of(both, L) == ra;
}

std::string residual_position(std::size_t n, std::size_t flat) {
    std::size_t q = flat % n, k = flat / n % n, j = flat / (n * n) % n, i = flat / (n * n * n);
    return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ",e" + std::to_string(k + 1) + ") coefficient of e" +
           std::to_string(q + 1);
}

CheckRecord residual_check(const std::string& name, const Vec& res, std::size_t n) {
    auto nz = nonzero_indices(res);
    CheckRecord rec{name, nz.empty() ? "PASS" : "MISMATCH", json::object()};
    rec.details["nonzero"] = nz.size();
    rec.details["total"] = res.size();
    if (!nz.empty()) {
        json list = json::array();
        std::vector<Poly> cons;
        for (std::size_t k = 0; k < nz.size() && k < 12; ++k)
            list.push_back({{"index", nz[k]}, {"at", residual_position(n, nz[k])}, {"value", res[nz[k]].to_string()}});
        for (auto k : nz) add_unique(cons, res[k]);
        rec.details["residuals"] = list;
        rec.details["constraints"] = poly_list(cons);
    }
    return rec;
}

json family_json(const FamilyReport& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["residual_verdict"] = verdict_name(r.residuals.verdict);
    j["constraints"] = poly_list(r.residuals.constraints);
    if (r.residuals.witness) j["witness_index"] = *r.residuals.witness;
    if (r.determinant) {
        j["determinant"] = r.determinant->to_string();
        j["determinant_unit"] = r.det_is_unit;
        if (r.det_remainder) j["determinant_remainder"] = r.det_remainder->to_string();
    }
    return j;
}

// ZERO as printed -> MATCH, else ZERO transposed -> MATCH-TRANSPOSED, else the
// as-printed verdict (CONDITIONAL, or MISMATCH for NONZERO).
CheckRecord family_check(const std::string& name, Kind kind, const Pair& p, const ParamMatrix& M) {
    FamilyReport as_is = verify_family(kind, p, M);
    ParamMatrix t{M.m.transposed(), M.exclusions};
    FamilyReport tr = verify_family(kind, p, t);
    CheckRecord rec{name, "", json::object()};
    rec.details["kind"] = kind_name(kind);
    rec.details["as_printed"] = family_json(as_is);
    rec.details["transposed"] = family_json(tr);
    if (as_is.verdict == Verdict::Zero) rec.verdict = "MATCH";
    else if (tr.verdict == Verdict::Zero) rec.verdict = "MATCH-TRANSPOSED";
    else if (as_is.verdict == Verdict::Conditional) rec.verdict = "CONDITIONAL";
    else rec.verdict = "MISMATCH";
    if (rec.verdict != "MATCH") {
        json cons = poly_list(as_is.residuals.constraints);
        if (as_is.determinant && as_is.determinant->is_zero()) cons.push_back("determinant: 0");
        else if (as_is.det_remainder) cons.push_back("determinant factor must not vanish: " + as_is.det_remainder->to_string());
        rec.details["constraints"] = cons;
    }
    return rec;
}

Vec project(const Vec& v, std::size_t slot, std::size_t n) {
    return Vec(v.begin() + slot * n * n, v.begin() + (slot + 1) * n * n);
}

CheckRecord span_check(const std::string& name, const std::vector<Matrix<RatFunc>>& printed, const std::vector<Vec>& computed,
                       const Pair& p) {
    CheckRecord rec{name, "", json::object()};
    SpanComparison cmp = compare_spans(printed, computed, p.dim, p.params);
    rec.verdict = cmp.verdict;
    rec.details["printed_dim"] = cmp.printed_dim;
    rec.details["computed_dim"] = cmp.computed_dim;
    rec.details["common_dim"] = cmp.common_dim;
    if (cmp.verdict != "MATCH") {
        rec.details["printed_outside_computed"] = poly_list(cmp.printed_outside);
        rec.details["computed_outside_printed"] = poly_list(cmp.computed_outside);
        json cons = poly_list(cmp.printed_outside);
        for (const auto& c : cmp.computed_outside) cons.push_back(c.to_string());
        rec.details["constraints"] = cons;
    }
    return rec;
}

template <class Fn>
void guarded(std::vector<CheckRecord>& out, const std::string& name, Fn fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        out.push_back({name, "MISMATCH", {{"error", e.what()}, {"constraints", json::array({std::string("error: ") + e.what()})}}});
    }
}

}  // namespace

SpanComparison compare_spans(const std::vector<Matrix<RatFunc>>& printed, const std::vector<Vec>& computed, std::size_t n,
                             const std::vector<std::string>& pair_params) {
    std::size_t L = printed.size() * n * n;
    SpanComparison out;
    auto P = monomial_vectors(printed, pair_params);
    out.printed_dim = rank_of(P, L);
    out.computed_dim = rank_of(computed, L);
    auto both = P;
    both.insert(both.end(), computed.begin(), computed.end());
    out.common_dim = out.printed_dim + out.computed_dim - rank_of(both, L);
    if (out.printed_dim == out.computed_dim && out.common_dim == out.printed_dim) {
        out.verdict = "MATCH";
        return out;
    }
    out.verdict = same_span(monomial_vectors(transposed(printed), pair_params), computed, L) ? "MATCH-TRANSPOSED" : "MISMATCH";
    Vec fam = flatten(printed);
    for (const auto& w : kernel(computed, L)) {
        RatFunc s;
        for (std::size_t k = 0; k < L; ++k)
            if (!w[k].is_zero() && !fam[k].is_zero()) s += w[k] * fam[k];
        add_unique(out.printed_outside, s);
    }
    Vec generic(L);
    for (std::size_t b = 0; b < computed.size(); ++b) {
        RatFunc t = RatFunc::variable("t" + std::to_string(b + 1));
        for (std::size_t k = 0; k < L; ++k)
            if (!computed[b][k].is_zero()) generic[k] += t * computed[b][k];
    }
    for (const auto& u : kernel(P, L)) {
        RatFunc s;
        for (std::size_t k = 0; k < L; ++k)
            if (!u[k].is_zero() && !generic[k].is_zero()) s += u[k] * generic[k];
        add_unique(out.computed_outside, s);
    }
    return out;
}

EntryReport verify_entry(const CatalogEntry& e) {
    const Pair& p = e.pair;
    std::size_t n = p.dim;
    EntryReport rep;
    rep.entry = p.name;
    auto& checks = rep.checks;

    guarded(checks, "associativity:bullet",
            [&] { checks.push_back(residual_check("associativity:bullet", associativity_residuals(p.bullet), n)); });
    guarded(checks, "associativity:star",
            [&] { checks.push_back(residual_check("associativity:star", associativity_residuals(p.star), n)); });
    guarded(checks, "compatibility",
            [&] { checks.push_back(residual_check("compatibility", compatibility_residuals(p), n)); });
    guarded(checks, "compatibility:self-bullet", [&] {
        checks.push_back(residual_check("compatibility:self-bullet", compatibility_residuals(self_pair(p.bullet, p.name)), n));
    });
    guarded(checks, "compatibility:self-star", [&] {
        checks.push_back(residual_check("compatibility:self-star", compatibility_residuals(self_pair(p.star, p.name)), n));
    });

    if (!p.params.empty()) {
        std::string names;
        for (const auto& v : p.params) names += (names.empty() ? "" : ",") + v;
        for (long v : specialization_values()) {
            std::string name = "specialize:" + names + "=" + std::to_string(v);
            guarded(checks, name, [&] {
                auto q = specialize_pair(p, v);
                if (!q) return;
                CheckRecord rec{name, "PASS", json::object()};
                auto ab = nonzero_indices(associativity_residuals(q->bullet)).size();
                auto as = nonzero_indices(associativity_residuals(q->star)).size();
                auto cp = nonzero_indices(compatibility_residuals(*q)).size();
                rec.details["associativity_bullet_nonzero"] = ab;
                rec.details["associativity_star_nonzero"] = as;
                rec.details["compatibility_nonzero"] = cp;
                json fd = json::object();
                for (Kind k : linear_kinds()) fd[kind_name(k)] = nullspace(build_system(k, *q)).freedim();
                rec.details["freedim"] = fd;
                if (ab || as || cp) {
                    rec.verdict = "MISMATCH";
                    rec.details["constraints"] = json::array({"nonzero residuals at this value"});
                }
                checks.push_back(std::move(rec));
            });
        }
    }

    for (const auto& f : e.automorphisms) {
        std::string name = "automorphism:" + f.label;
        guarded(checks, name, [&] {
            if (!f.radical) {
                checks.push_back(family_check(name, Kind::Automorphism, p, f.matrix));
                return;
            }
            CheckRecord rec{name, "SKIPPED-RADICAL", json::object()};
            json printed = json::array();
            for (const auto& row : f.text) printed.push_back(row);
            rec.details["printed"] = printed;
            json subs = json::object();
            for (std::size_t k = 0; k < f.radical_symbols.size(); ++k) subs["root_" + std::to_string(k + 1)] = f.radical_symbols[k];
            rec.details["substitution"] = subs;
            auto sup = family_check(name, Kind::Automorphism, p, f.matrix);
            rec.details["reparametrized"] = {{"verdict", sup.verdict}, {"details", sup.details}};
            checks.push_back(std::move(rec));
        });
    }

    std::map<Kind, SolutionSpace<RatFunc>> spaces;
    for (Kind k : linear_kinds()) {
        std::string name = "space:" + kind_name(k);
        guarded(checks, name, [&] {
            auto sp = nullspace(build_system(k, p));
            CheckRecord rec{name, "PASS", json::object()};
            rec.details["freedim"] = sp.freedim();
            rec.details["exclusions"] = poly_list(sp.exclusions);
            json slots = json::array();
            for (const auto& m : format_solution(sp)) slots.push_back(matrix_json(m));
            rec.details["general_element"] = slots;
            if (sp.slots > 1) {
                json sf = json::array();
                for (std::size_t s = 0; s < sp.slots; ++s) {
                    std::vector<Vec> proj;
                    for (const auto& v : sp.basis) proj.push_back(project(v, s, n));
                    sf.push_back(rank_of(proj, n * n));
                }
                rec.details["slot_dims"] = sf;
            }
            checks.push_back(std::move(rec));
            spaces.emplace(k, std::move(sp));
        });
    }

    for (const auto& inv : e.invariants) {
        std::string base = "expected:" + inv.label;
        Kind first = inv.kinds.front();
        if (is_linear(first)) {
            guarded(checks, base, [&] {
                auto it = spaces.find(first);
                if (it == spaces.end()) throw Error("no computed space for " + kind_name(first));
                const auto& sp = it->second;
                checks.push_back(span_check(base, inv.slots, sp.basis, p));
                if (inv.slots.size() > 1)
                    for (std::size_t s = 0; s < inv.slots.size(); ++s) {
                        std::vector<Vec> proj;
                        for (const auto& v : sp.basis) proj.push_back(project(v, s, n));
                        checks.push_back(span_check(base + ":slot-" + std::to_string(s + 1), {inv.slots[s]}, proj, p));
                    }
            });
            continue;
        }
        for (Kind k : inv.kinds) {
            std::string name = inv.kinds.size() > 1 ? base + ":as-" + kind_name(k) : base;
            guarded(checks, name, [&] { checks.push_back(family_check(name, k, p, ParamMatrix{inv.slots.front(), {}})); });
        }
    }
    return rep;
}

}  // namespace cpa
