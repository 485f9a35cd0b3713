#include "cpa/cli.hpp"

#include "cpa/catalog.hpp"
#include "cpa/errors.hpp"
#include "cpa/expr.hpp"
#include "cpa/linear.hpp"
#include "cpa/operators.hpp"
#include "cpa/oracle.hpp"
#include "cpa/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

namespace cpa {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
    std::string file, kind, family, only, out_dir, format = "text";
    std::vector<std::string> params;
    std::optional<std::int64_t> oracle;
    bool strict = false;
};

struct UsageError : Error {
    using Error::Error;
};

Pair load_pair(const std::string& file) {
    if (fs::is_regular_file(file)) {
        try {
            return parse_algebra(read_file(file));
        } catch (const ParseError& e) {
            throw UsageError(file + ": " + e.what());
        }
    }
    for (const auto& e : load_catalog(default_catalog_dir()))
        if (e.pair.name == file) return e.pair;
    throw UsageError("no such file or catalog entry: " + file);
}

Pair apply_params(const Pair& p, const std::vector<std::string>& assignments) {
    if (assignments.empty()) return p;
    std::map<std::string, Rational> point;
    for (const auto& a : assignments) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects name=value, got '" + a + "'");
        std::string name = a.substr(0, eq);
        if (std::find(p.params.begin(), p.params.end(), name) == p.params.end())
            throw UsageError("pair has no parameter '" + name + "'");
        try {
            point[name] = Rational::parse(a.substr(eq + 1));
        } catch (const Error& e) {
            throw UsageError("--param " + name + ": " + e.what());
        }
    }
    for (const auto& x : p.exclusions)
        if (x.eval(point).is_zero() && std::all_of(x.variables().begin(), x.variables().end(),
                                                   [&](const std::string& v) { return point.count(v); }))
            throw UsageError("parameter values violate exclusion " + x.to_string() + " != 0");
    Pair q = p.map([&](const RatFunc& c) { return c.specialize(point); });
    q.params.clear();
    for (const auto& v : p.params)
        if (!point.count(v)) q.params.push_back(v);
    q.exclusions.clear();
    for (const auto& x : p.exclusions) {
        RatFunc r = RatFunc(x).specialize(point);
        if (!r.is_constant()) q.exclusions.push_back(r.numerator().normalized());
    }
    return q;
}

Kind kind_option(const std::string& name) {
    auto k = parse_kind(name);
    if (!k) throw UsageError("unknown kind '" + name + "'");
    return *k;
}

json matrix_rows(const Matrix<RatFunc>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(row);
    }
    return rows;
}

std::string rows_text(const json& rows, const std::string& indent) {
    std::string s;
    for (const auto& row : rows) {
        s += indent + "[";
        for (std::size_t c = 0; c < row.size(); ++c) s += (c ? ", " : "") + row[c].get<std::string>();
        s += "]\n";
    }
    return s;
}

json residual_summary(const std::vector<RatFunc>& res) {
    json nz = json::array();
    for (auto k : nonzero_indices(res)) nz.push_back({{"index", k}, {"value", res[k].to_string()}});
    return {{"zero", nz.empty()}, {"nonzero", nz}};
}

int cmd_check(const Options& o, std::ostream& out) {
    Pair p = apply_params(load_pair(o.file), o.params);
    json j = {{"pair", p.name},
              {"associativity", {{"bullet", residual_summary(associativity_residuals(p.bullet))},
                                 {"star", residual_summary(associativity_residuals(p.star))}}},
              {"compatibility", residual_summary(compatibility_residuals(p))}};
    bool assoc = j["associativity"]["bullet"]["zero"] && j["associativity"]["star"]["zero"];
    j["associative"] = assoc;
    j["compatible"] = assoc && j["compatibility"]["zero"].get<bool>();
    if (o.format == "json") {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "pair: " << p.name << "\n";
    for (const char* prod : {"bullet", "star"}) {
        const auto& r = j["associativity"][prod];
        out << "associative(" << prod << "): " << (r["zero"].get<bool>() ? "true" : "false") << "\n";
        for (const auto& x : r["nonzero"]) out << "  residual " << x["index"] << ": " << x["value"].get<std::string>() << "\n";
    }
    out << "compatibility residuals zero: " << (j["compatibility"]["zero"].get<bool>() ? "true" : "false") << "\n";
    for (const auto& x : j["compatibility"]["nonzero"])
        out << "  residual " << x["index"] << ": " << x["value"].get<std::string>() << "\n";
    out << "compatible: " << (j["compatible"].get<bool>() ? "true" : "false") << "\n";
    return 0;
}

int cmd_invariants(const Options& o, std::ostream& out) {
    Pair p = apply_params(load_pair(o.file), o.params);
    Kind k = kind_option(o.kind);
    if (!is_linear(k)) throw UsageError("invariants needs a linear kind, got " + o.kind);
    auto sp = nullspace(build_system(k, p));
    json general = json::array(), basis = json::array(), excl = json::array();
    for (const auto& m : format_solution(sp)) general.push_back(matrix_rows(m));
    for (const auto& v : sp.basis) {
        json slots = json::array();
        for (const auto& m : unflatten(v, sp.dim, sp.slots)) slots.push_back(matrix_rows(m));
        basis.push_back(slots);
    }
    for (const auto& x : sp.exclusions) excl.push_back(x.to_string());
    json j = {{"pair", p.name}, {"kind", kind_name(k)}, {"freedim", sp.freedim()}, {"exclusions", excl},
              {"general_element", general}, {"basis", basis}};
    if (o.format == "json") {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "pair: " << p.name << "\nkind: " << kind_name(k) << "\nfreedim: " << sp.freedim() << "\n";
    if (!excl.empty()) {
        out << "valid where nonzero:";
        for (const auto& x : excl) out << " " << x.get<std::string>();
        out << "\n";
    }
    for (std::size_t s = 0; s < general.size(); ++s) {
        if (general.size() > 1) out << "slot " << s + 1 << ":\n";
        out << rows_text(general[s], "  ");
    }
    return 0;
}

ParamMatrix load_family(const std::string& file, std::size_t n) {
    json doc;
    try {
        doc = json::parse(read_file(file));
    } catch (const json::parse_error& e) {
        throw UsageError(file + ": " + e.what());
    }
    json rows = doc.is_object() ? doc.value("matrix", json()) : doc;
    if (!rows.is_array() || rows.size() != n) throw UsageError(file + ": expected " + std::to_string(n) + " matrix rows");
    ParamMatrix M{Matrix<RatFunc>(n, n), {}};
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n) throw UsageError(file + ": row " + std::to_string(r + 1) + " has wrong length");
        for (std::size_t c = 0; c < n; ++c) {
            if (!rows[r][c].is_string()) throw UsageError(file + ": entries must be strings");
            M.m(r, c) = parse_expression(rows[r][c].get<std::string>());
        }
    }
    if (doc.is_object() && doc.contains("exclusions"))
        for (const auto& x : doc["exclusions"]) M.exclusions.push_back(parse_expression(x.get<std::string>()).numerator().normalized());
    return M;
}

int cmd_operators(const Options& o, std::ostream& out) {
    Pair p = apply_params(load_pair(o.file), o.params);
    Kind k = kind_option(o.kind);
    if (o.family.empty() == !o.oracle) throw UsageError("operators needs exactly one of --family or --oracle");
    json j = {{"pair", p.name}, {"kind", kind_name(k)}};
    if (o.oracle) {
        auto q = to_rational(p);
        if (!q) throw UsageError("--oracle needs a pair without free parameters (use --param)");
        auto res = exhaustive_solutions_mod_p(k, *q, *o.oracle);
        json sols = json::array();
        for (const auto& s : res.solutions) {
            Matrix<RatFunc> m(p.dim, p.dim);
            auto fm = oracle_matrix(s, p.dim, *o.oracle);
            json rows = json::array();
            for (std::size_t r = 0; r < p.dim; ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < p.dim; ++c) row.push_back(fm(r, c).value());
                rows.push_back(row);
            }
            sols.push_back(rows);
        }
        j["prime"] = *o.oracle;
        j["count"] = res.count();
        j["solutions"] = sols;
        if (o.format == "json") {
            out << j.dump(2) << "\n";
            return 0;
        }
        out << "pair: " << p.name << "\nkind: " << kind_name(k) << "\nprime: " << *o.oracle << "\ncount: " << res.count() << "\n";
        for (const auto& s : sols) {
            out << "solution:\n";
            for (const auto& row : s) out << "  " << row.dump() << "\n";
        }
        return 0;
    }
    ParamMatrix M = load_family(o.family, p.dim);
    FamilyReport r = verify_family(k, p, M);
    json cons = json::array();
    for (const auto& c : r.residuals.constraints) cons.push_back(c.to_string());
    j["family"] = matrix_rows(M.m);
    j["verdict"] = verdict_name(r.verdict);
    j["constraints"] = cons;
    if (r.residuals.witness) j["witness_index"] = *r.residuals.witness;
    if (r.determinant) {
        j["determinant"] = r.determinant->to_string();
        j["determinant_unit"] = r.det_is_unit;
    }
    if (o.format == "json") {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "pair: " << p.name << "\nkind: " << kind_name(k) << "\nverdict: " << j["verdict"].get<std::string>() << "\n";
    for (const auto& c : cons) out << "constraint: " << c.get<std::string>() << " = 0\n";
    if (r.residuals.witness) out << "witness residual index: " << *r.residuals.witness << "\n";
    if (r.determinant) out << "determinant: " << r.determinant->to_string() << "\n";
    return 0;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path.string());
    f << text;
}

int cmd_verify_catalog(const Options& o, std::ostream& out) {
    auto entries = load_catalog(default_catalog_dir());
    if (!o.only.empty()) {
        std::erase_if(entries, [&](const CatalogEntry& e) { return e.pair.name != o.only; });
        if (entries.empty()) throw UsageError("no catalog entry named " + o.only);
    }
    auto reports = verify_all(entries);
    json summary = summary_json(reports);
    fs::create_directories(o.out_dir);
    for (const auto& r : reports) write_file(fs::path(o.out_dir) / (r.entry + ".json"), report_json(r).dump(2) + "\n");
    write_file(fs::path(o.out_dir) / "report.json", emit_json(reports));
    write_file(fs::path(o.out_dir) / "summary.json", summary.dump(2) + "\n");
    if (o.format == "json") out << summary.dump(2) << "\n";
    else out << summary_text(summary) << "reports written to " << o.out_dir << "\n";
    bool mismatch = summary["verdicts"].contains("MISMATCH");
    return o.strict && mismatch ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compatible associative algebra verifier", "cpa"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c, bool with_file) {
        if (with_file) c->add_option("FILE", o.file, "Pair file or built-in entry name")->required();
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        c->add_option("--param", o.params, "Parameter assignment name=value");
    };
    auto* check = app.add_subcommand("check", "Associativity and compatibility residuals");
    common(check, true);
    auto* inv = app.add_subcommand("invariants", "Solution space of a linear invariant kind");
    common(inv, true);
    inv->add_option("--kind", o.kind, "Invariant kind")->required();
    auto* ops = app.add_subcommand("operators", "Verify an operator family or enumerate over F_p");
    common(ops, true);
    ops->add_option("--kind", o.kind, "Operator kind")->required();
    auto* fam = ops->add_option("--family", o.family, "Family file (JSON matrix)");
    auto* orc = ops->add_option("--oracle", o.oracle, "Prime for exhaustive enumeration");
    fam->excludes(orc);
    auto* vc = app.add_subcommand("verify-catalog", "Verify every catalog entry and write reports");
    common(vc, false);
    vc->add_option("--only", o.only, "Single entry name");
    vc->add_option("--out", o.out_dir, "Output directory")->required();
    vc->add_flag("--strict-paper", o.strict, "Exit 1 when any check is MISMATCH");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*check) return cmd_check(o, out);
        if (*inv) return cmd_invariants(o, out);
        if (*ops) return cmd_operators(o, out);
        return cmd_verify_catalog(o, out);
    } catch (const GuardExceeded& e) {
        err << "error: enumeration guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cpa
