#include "cpa/catalog.hpp"
#include "cpa/errors.hpp"
#include "cpa/expr.hpp"
#include "cpa/linear.hpp"
#include "cpa/operators.hpp"
#include "cpa/oracle.hpp"
#include "cpa/report.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace cpa;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t seed() {
    const char* s = std::getenv("CPA_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 20240611;
}

Pair lift(const AlgebraPair<Rational>& q) {
    return q.map([](const Rational& x) { return RatFunc(x); });
}

// The pair itself when it has no parameters, else its specializations.
std::vector<AlgebraPair<Rational>> rational_instances(const Pair& p) {
    std::vector<AlgebraPair<Rational>> out;
    if (auto q = to_rational(p)) {
        out.push_back(*q);
        return out;
    }
    for (long v : specialization_values())
        if (auto q = specialize_pair(p, v)) out.push_back(*q);
    return out;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome self_pair_controls(const std::vector<CatalogEntry>& cat) {
    auto t0 = Clock::now();
    std::set<std::string> failing;
    std::size_t algebras = 0;
    for (const auto& e : cat) {
        for (int which : {0, 1}) {
            const auto& t = which ? e.pair.star : e.pair.bullet;
            ++algebras;
            if (!all_zero(compatibility_residuals(self_pair(t, e.pair.name))))
                failing.insert(e.pair.name + (which ? ":star" : ":bullet"));
        }
    }
    double s = seconds_since(t0);
    std::ostringstream os;
    os << algebras << " algebras, " << failing.size() << " self-pairs with nonzero residuals, " << s << " s";
    if (!failing.empty()) {
        os << " (";
        bool first = true;
        for (const auto& f : failing) os << (first ? "" : ", ") << f, first = false;
        os << ")";
    }
    return {failing.empty() && s < 5, os.str()};
}

Outcome catalog_completeness(const std::vector<CatalogEntry>& cat) {
    std::map<std::size_t, int> by_dim;
    for (const auto& e : cat) ++by_dim[e.pair.dim];
    std::size_t errors = 0;
    std::string a, b;
    try {
        auto r1 = verify_all(cat);
        auto r2 = verify_all(cat);
        a = emit_json(r1);
        b = emit_json(r2);
        for (const auto& r : r1)
            for (const auto& c : r.checks) errors += c.details.contains("error");
        if (r1.size() != cat.size()) ++errors;
    } catch (const std::exception& e) {
        return {false, std::string("crash: ") + e.what()};
    }
    bool counts = by_dim[2] == 1 && by_dim[3] == 3 && by_dim[4] == 39 && cat.size() == 43;
    std::ostringstream os;
    os << by_dim[2] << "+" << by_dim[3] << "+" << by_dim[4] << " entries, " << errors << " check errors, JSON "
       << (a == b ? "byte-identical" : "differs") << " across two runs";
    return {counts && errors == 0 && a == b, os.str()};
}

Outcome trivial_membership(const std::vector<CatalogEntry>& cat) {
    std::size_t checks = 0, failed = 0;
    std::vector<std::string> failures;
    RatFunc lambda = RatFunc::variable("lambda");
    auto expect = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failed;
            if (failures.size() < 5) failures.push_back(what);
        }
    };
    for (const auto& e : cat) {
        std::vector<Pair> instances = {e.pair};
        for (const auto& q : rational_instances(e.pair))
            if (!q.params.empty() || !e.pair.params.empty()) instances.push_back(lift(q));
        for (const auto& p : instances) {
            std::size_t n = p.dim;
            std::string tag = e.pair.name;
            for (Kind k : linear_kinds()) {
                auto sys = build_system(k, p);
                expect(satisfies(sys, std::vector<RatFunc>(sys.unknowns())), tag + " 0 in " + kind_name(k));
            }
            auto id = Matrix<RatFunc>::identity(n);
            expect(satisfies(build_system(Kind::Centroid, p), flatten<RatFunc>({id})), tag + " I in centroid");
            auto aut = verify_family(Kind::Automorphism, p, {id, {}});
            expect(aut.verdict == Verdict::Zero, tag + " I automorphism");
            expect(verify_family(Kind::RotaBaxter, p, {Matrix<RatFunc>(n, n), {}}).verdict == Verdict::Zero, tag + " 0 Rota-Baxter");
            expect(verify_family(Kind::Nijenhuis, p, {id * lambda, {}}).verdict == Verdict::Zero, tag + " lambda*I Nijenhuis");
            expect(verify_family(Kind::Averaging, p, {id, {}}).verdict == Verdict::Zero, tag + " I averaging");
            expect(verify_family(Kind::Reynolds, p, {id, {}}).verdict == Verdict::Zero, tag + " I Reynolds");
        }
    }
    std::ostringstream os;
    os << checks - failed << "/" << checks << " trivial memberships hold";
    for (const auto& f : failures) os << "; failed: " << f;
    return {failed == 0, os.str()};
}

Outcome oracle_agreement(const std::vector<CatalogEntry>& cat) {
    auto t0 = Clock::now();
    std::size_t comparisons = 0, disagreements = 0, skipped = 0;
    std::string first;
    for (const auto& e : cat) {
        if (e.pair.dim > 3) continue;
        for (const auto& q : rational_instances(e.pair))
            for (std::int64_t p : {5, 7})
                for (Kind k : {Kind::Derivation, Kind::Centroid, Kind::QuasiCentroid}) {
                    try {
                        auto fp = q.map([p](const Rational& x) { return reduce_mod_p(x, p); });
                        std::size_t d = nullspace(build_system(k, fp)).freedim();
                        std::size_t expected = 1;
                        for (std::size_t t = 0; t < d; ++t) expected *= p;
                        auto res = exhaustive_solutions_mod_p(k, q, p);
                        ++comparisons;
                        if (res.count() != expected) {
                            ++disagreements;
                            if (first.empty())
                                first = e.pair.name + " " + kind_name(k) + " p=" + std::to_string(p) + ": " +
                                        std::to_string(res.count()) + " vs " + std::to_string(expected);
                        }
                    } catch (const ReductionError&) {
                        ++skipped;
                    }
                }
    }
    double s = seconds_since(t0);
    std::ostringstream os;
    os << comparisons << " counts compared, " << disagreements << " disagreements, " << skipped << " not reducible, " << s << " s";
    if (!first.empty()) os << "; first: " << first;
    return {disagreements == 0 && comparisons > 0 && s < 60, os.str()};
}

const CatalogEntry& find(const std::vector<CatalogEntry>& cat, const std::string& name) {
    for (const auto& e : cat)
        if (e.pair.name == name) return e;
    throw Error("missing entry " + name);
}

Outcome verified_families(const std::vector<CatalogEntry>& cat) {
    const auto& e = find(cat, "A2_01-A2_04");
    const ExpectedInvariant* rb = nullptr;
    const ExpectedInvariant* below = nullptr;
    for (const auto& inv : e.invariants) {
        if (inv.label == "rota-baxter") rb = &inv;
        if (inv.label == "reynolds") below = &inv;
    }
    if (!rb || !below) return {false, "families missing from catalog"};
    auto vr = verify_family(Kind::RotaBaxter, e.pair, {rb->slots[0], {}}).verdict;
    auto va = verify_family(Kind::Averaging, e.pair, {below->slots[0], {}}).verdict;
    auto q = *to_rational(e.pair);
    bool listed = true;
    for (auto [kind, inv] : {std::pair{Kind::RotaBaxter, rb}, std::pair{Kind::Averaging, below}}) {
        auto sols = exhaustive_solutions_mod_p(kind, q, 5).solutions;
        std::set<std::vector<std::int64_t>> have(sols.begin(), sols.end());
        auto params = family_parameters(e.pair, inv->slots[0]);
        for (std::int64_t v = 0; v < 5; ++v) {
            std::map<std::string, Rational> point;
            for (const auto& s : params) point[s] = Rational(v);
            std::vector<std::int64_t> sol;
            for (const auto& x : flatten<RatFunc>({inv->slots[0]})) sol.push_back(reduce_mod_p(x.specialize(point).constant_value(), 5).value());
            listed = listed && have.count(sol);
        }
    }
    std::ostringstream os;
    os << "Rota-Baxter " << verdict_name(vr) << ", below-diagonal averaging " << verdict_name(va) << ", F_5 specializations "
       << (listed ? "all listed" : "missing");
    return {vr == Verdict::Zero && va == Verdict::Zero && listed, os.str()};
}

Outcome parametric_elimination(const std::vector<CatalogEntry>& cat) {
    const auto& e = find(cat, "A3_01-A3_02");
    auto generic = nullspace(build_system(Kind::Derivation, e.pair));
    bool ok = true;
    std::ostringstream os;
    os << "generic freedim " << generic.freedim();
    for (long v : {0L, 2L, 5L}) {
        std::map<std::string, Rational> point{{"alpha", Rational(v)}};
        auto q = specialize_pair(e.pair, v);
        if (!q) return {false, "alpha=" + std::to_string(v) + " not admissible"};
        auto sys = build_system(Kind::Derivation, *q);
        std::size_t d = nullspace(sys).freedim();
        bool solves = true;
        for (const auto& b : generic.basis) {
            std::vector<Rational> s;
            for (const auto& x : b) s.push_back(x.specialize(point).constant_value());
            solves = solves && satisfies(sys, s);
        }
        os << ", alpha=" << v << ": freedim " << d << (solves ? "" : " (basis fails)");
        ok = ok && d == generic.freedim() && solves;
    }
    return {ok, os.str()};
}

Outcome closure(const std::vector<CatalogEntry>& cat) {
    std::size_t pairs = 0, failures = 0;
    std::string first;
    for (const auto& e : cat) {
        if (e.pair.dim > 3) continue;
        std::size_t n = e.pair.dim;
        for (Kind k : {Kind::Derivation, Kind::Centroid}) {
            auto sp = nullspace(build_system(k, e.pair));
            for (const auto& a : sp.basis)
                for (const auto& b : sp.basis) {
                    auto A = unflatten(a, n, 1)[0], B = unflatten(b, n, 1)[0];
                    auto C = k == Kind::Derivation ? A * B - B * A : A * B;
                    ++pairs;
                    if (!membership(sp, {C})) {
                        ++failures;
                        if (first.empty()) first = e.pair.name + " " + kind_name(k);
                    }
                }
        }
    }
    std::ostringstream os;
    os << pairs << " basis pairs, " << failures << " outside the space";
    if (!first.empty()) os << "; first: " << first;
    return {failures == 0, os.str()};
}

Outcome diff_report(const std::vector<CatalogEntry>& cat) {
    const std::set<std::string> allowed = {"MATCH", "MATCH-TRANSPOSED", "MISMATCH", "CONDITIONAL"};
    auto reports = verify_all(cat);
    std::size_t tables = 0, covered = 0, radical = 0, missing_constraints = 0;
    for (std::size_t k = 0; k < cat.size(); ++k) {
        const auto& e = cat[k];
        const EntryReport* r = nullptr;
        for (const auto& x : reports)
            if (x.entry == e.pair.name) r = &x;
        auto has = [&](const std::string& prefix) {
            bool found = false;
            for (const auto& c : r->checks) {
                if (c.name != prefix && c.name.rfind(prefix + ":", 0) != 0) continue;
                if (!allowed.count(c.verdict)) return false;
                found = true;
                if (c.verdict != "MATCH" && (!c.details.contains("constraints") || c.details["constraints"].empty())) ++missing_constraints;
            }
            return found;
        };
        for (const auto& f : e.automorphisms) {
            if (f.radical) {
                ++radical;
                continue;
            }
            ++tables;
            covered += r && has("automorphism:" + f.label);
        }
        for (const auto& inv : e.invariants) {
            ++tables;
            covered += r && has("expected:" + inv.label);
        }
    }
    bool deterministic = emit_json(reports) == emit_json(verify_all(cat));
    std::ostringstream os;
    os << covered << "/" << tables << " printed tables with verdicts (" << radical << " radical skipped), " << missing_constraints
       << " non-MATCH verdicts without constraints, " << (deterministic ? "deterministic" : "nondeterministic");
    return {covered == tables && missing_constraints == 0 && deterministic, os.str()};
}

Outcome round_trip(const std::vector<CatalogEntry>& cat) {
    std::size_t builtin = 0, random = 0;
    for (const auto& e : cat) {
        auto s = serialize(e.pair);
        builtin += parse_algebra(s) == e.pair && serialize(parse_algebra(s)) == s;
    }
    std::mt19937_64 rng(seed());
    const std::vector<std::string> scalars = {"1", "-1", "2", "1/3", "alpha", "alpha^2-1", "(1+alpha)/(1-alpha)", "-2*alpha/3"};
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 4;
        bool param = rng() % 2;
        json doc = {{"name", "r" + std::to_string(t)}, {"dim", n}, {"params", json::array()}, {"exclusions", json::array()}};
        if (param) doc["params"] = {"alpha"};
        std::set<std::tuple<int, int, int, int>> used;
        for (const char* prod : {"bullet", "star"}) {
            doc[prod] = json::array();
            for (std::size_t c = rng() % (n * n + 1); c > 0; --c) {
                int i = 1 + rng() % n, j = 1 + rng() % n, k = 1 + rng() % n;
                if (!used.emplace(prod[0], i, j, k).second) continue;
                doc[prod].push_back({{"i", i}, {"j", j}, {"k", k}, {"c", scalars[rng() % (param ? scalars.size() : 4)]}});
            }
        }
        Pair p = parse_algebra(doc.dump());
        auto s = serialize(p);
        random += parse_algebra(s) == p && serialize(parse_algebra(s)) == s;
    }
    std::ostringstream os;
    os << builtin << "/" << cat.size() << " built-in and " << random << "/100 random files (seed " << seed() << ")";
    return {builtin == cat.size() && random == 100, os.str()};
}

}  // namespace

int main() {
    std::vector<CatalogEntry> cat;
    try {
        cat = load_builtin_catalog();
    } catch (const std::exception& e) {
        std::cout << "FAIL catalog could not be loaded: " << e.what() << "\n";
        return 1;
    }
    const std::vector<std::pair<std::string, std::function<Outcome(const std::vector<CatalogEntry>&)>>> criteria = {
        {"1 compatibility controls", self_pair_controls},
        {"2 catalog completeness", catalog_completeness},
        {"3 trivial membership", trivial_membership},
        {"4 oracle agreement", oracle_agreement},
        {"5 verified families", verified_families},
        {"6 parametric elimination", parametric_elimination},
        {"7 closure properties", closure},
        {"8 diff report", diff_report},
        {"9 round trip", round_trip},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn(cat);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failed ? 1 : 0;
}
