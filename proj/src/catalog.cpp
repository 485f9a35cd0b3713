#include "cpa/catalog.hpp"

#include "cpa/errors.hpp"
#include "cpa/expr.hpp"
#include "cpa/linear.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace cpa {

using nlohmann::json;

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Position of the first occurrence of `needle`, for diagnostics only.
std::pair<int, int> locate(const std::string& text, const std::string& needle) {
    auto at = text.find(needle);
    return at == std::string::npos ? std::pair{1, 1} : line_col(text, at);
}

[[noreturn]] void fail_at(const std::string& text, const std::string& needle, const std::string& msg) {
    auto [l, c] = locate(text, needle);
    throw ParseError(msg, l, c);
}

RatFunc parse_scalar(const std::string& text, const std::string& expr, const std::set<std::string>& params) {
    RatFunc v;
    try {
        v = parse_expression(expr);
    } catch (const ParseError& e) {
        auto [l, c] = locate(text, "\"" + expr + "\"");
        throw ParseError(std::string("malformed scalar: ") + e.what(), l, c + e.column);
    }
    for (const auto& name : v.variables())
        if (!params.count(name)) fail_at(text, "\"" + expr + "\"", "undeclared parameter '" + name + "'");
    return v;
}

const std::regex& identifier() {
    static const std::regex re("[a-zA-Z][a-zA-Z0-9_]*");
    return re;
}

void read_product(const std::string& text, const json& arr, const std::string& key, std::size_t n,
                  const std::set<std::string>& params, StructureTensor<RatFunc>& t) {
    if (!arr.is_array()) fail_at(text, "\"" + key + "\"", "'" + key + "' must be an array");
    std::set<std::tuple<long, long, long>> seen;
    for (const auto& e : arr) {
        if (!e.is_object()) fail_at(text, "\"" + key + "\"", "entries of '" + key + "' must be objects");
        for (const auto& [k, v] : e.items())
            if (k != "i" && k != "j" && k != "k" && k != "c") fail_at(text, "\"" + k + "\"", "unknown field '" + k + "'");
        for (const char* f : {"i", "j", "k"}) {
            if (!e.contains(f) || !e[f].is_number_integer())
                fail_at(text, "\"" + key + "\"", std::string("entry field '") + f + "' must be an integer");
            long x = e[f].get<long>();
            if (x < 1 || x > static_cast<long>(n))
                fail_at(text, "\"" + key + "\"",
                        std::string("index ") + f + " = " + std::to_string(x) + " outside 1.." + std::to_string(n));
        }
        if (!e.contains("c") || !e["c"].is_string()) fail_at(text, "\"" + key + "\"", "entry field 'c' must be a string");
        long i = e["i"], j = e["j"], k = e["k"];
        if (!seen.emplace(i, j, k).second)
            fail_at(text, "\"" + key + "\"",
                    "duplicate entry (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ") in '" +
                        key + "'");
        t(i - 1, j - 1, k - 1) = parse_scalar(text, e["c"].get<std::string>(), params);
    }
}

}  // namespace

Pair parse_algebra(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("syntax error: ") + e.what(), l, c);
    }
    if (!doc.is_object()) throw ParseError("document must be a JSON object", 1, 1);
    static const std::set<std::string> known{"name", "dim", "params", "exclusions", "bullet", "star"};
    for (const auto& [k, v] : doc.items())
        if (!known.count(k)) fail_at(text, "\"" + k + "\"", "unknown field '" + k + "'");
    for (const char* f : {"name", "dim", "bullet", "star"})
        if (!doc.contains(f)) throw ParseError(std::string("missing field '") + f + "'", 1, 1);
    Pair p;
    if (!doc["name"].is_string()) fail_at(text, "\"name\"", "'name' must be a string");
    p.name = doc["name"];
    if (!doc["dim"].is_number_integer()) fail_at(text, "\"dim\"", "'dim' must be an integer");
    long dim = doc["dim"];
    if (dim < 1 || dim > 16) fail_at(text, "\"dim\"", "dimension " + std::to_string(dim) + " outside 1..16");
    p.dim = static_cast<std::size_t>(dim);
    std::set<std::string> params;
    if (doc.contains("params")) {
        if (!doc["params"].is_array()) fail_at(text, "\"params\"", "'params' must be an array");
        for (const auto& v : doc["params"]) {
            if (!v.is_string() || !std::regex_match(v.get<std::string>(), identifier()))
                fail_at(text, "\"params\"", "parameter names must match [a-zA-Z][a-zA-Z0-9_]*");
            if (!params.insert(v.get<std::string>()).second)
                fail_at(text, "\"params\"", "duplicate parameter '" + v.get<std::string>() + "'");
            p.params.push_back(v);
        }
    }
    if (doc.contains("exclusions")) {
        if (!doc["exclusions"].is_array()) fail_at(text, "\"exclusions\"", "'exclusions' must be an array");
        if (!doc["exclusions"].empty() && params.empty())
            fail_at(text, "\"exclusions\"", "exclusions given for a pair without parameters");
        for (const auto& v : doc["exclusions"]) {
            if (!v.is_string()) fail_at(text, "\"exclusions\"", "exclusions must be strings");
            RatFunc x = parse_scalar(text, v.get<std::string>(), params);
            if (x.is_zero() || x.numerator().is_constant())
                fail_at(text, "\"" + v.get<std::string>() + "\"", "exclusion must be a non-constant polynomial");
            p.exclusions.push_back(x.numerator().normalized());
        }
    }
    p.bullet = StructureTensor<RatFunc>(p.dim);
    p.star = StructureTensor<RatFunc>(p.dim);
    read_product(text, doc["bullet"], "bullet", p.dim, params, p.bullet);
    read_product(text, doc["star"], "star", p.dim, params, p.star);
    return p;
}

std::string serialize(const Pair& p) {
    json doc;
    doc["name"] = p.name;
    doc["dim"] = p.dim;
    doc["params"] = p.params;
    json excl = json::array();
    for (const auto& e : p.exclusions) excl.push_back(e.to_string());
    doc["exclusions"] = excl;
    for (int prod = 0; prod < 2; ++prod) {
        json arr = json::array();
        const auto& t = p.product(prod);
        for (std::size_t i = 0; i < p.dim; ++i)
            for (std::size_t j = 0; j < p.dim; ++j)
                for (std::size_t k = 0; k < p.dim; ++k)
                    if (!t(i, j, k).is_zero())
                        arr.push_back({{"c", t(i, j, k).to_string()}, {"i", i + 1}, {"j", j + 1}, {"k", k + 1}});
        doc[prod == 0 ? "bullet" : "star"] = arr;
    }
    return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string default_catalog_dir() {
    if (const char* env = std::getenv("CPA_CATALOG_DIR"); env && *env) return env;
    return CPA_DEFAULT_CATALOG_DIR;
}

namespace {

// Replaces each sqrt(...) by a fresh symbol; returns the rewritten text.
std::string replace_radicals(const std::string& s, std::vector<std::string>& symbols) {
    std::string out;
    std::size_t pos = 0;
    while (true) {
        auto at = s.find("sqrt(", pos);
        if (at == std::string::npos) break;
        out += s.substr(pos, at - pos);
        std::size_t k = at + 5;
        int depth = 1;
        while (k < s.size() && depth) {
            if (s[k] == '(') ++depth;
            if (s[k] == ')') --depth;
            ++k;
        }
        std::string arg = s.substr(at, k - at);
        auto it = std::find(symbols.begin(), symbols.end(), arg);
        std::size_t idx = it - symbols.begin();
        if (it == symbols.end()) symbols.push_back(arg);
        out += "root_" + std::to_string(idx + 1);
        pos = k;
    }
    return out + s.substr(pos);
}

Matrix<RatFunc> parse_matrix(const json& rows, std::size_t n, const std::string& where) {
    if (!rows.is_array() || rows.size() != n) throw Error(where + ": matrix must have " + std::to_string(n) + " rows");
    Matrix<RatFunc> m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n) throw Error(where + ": row of the wrong length");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_expression(rows[r][c].get<std::string>());
    }
    return m;
}

}  // namespace

std::vector<CatalogEntry> load_catalog(const std::string& dir) {
    json doc = json::parse(read_file(dir + "/catalog.json"));
    std::vector<CatalogEntry> out;
    for (const auto& e : doc.at("entries")) {
        CatalogEntry ce;
        std::string file = e.at("file");
        try {
            ce.pair = parse_algebra(read_file(dir + "/" + file));
        } catch (const ParseError& err) {
            throw Error(file + ": " + err.what());
        }
        if (ce.pair.name != e.at("name").get<std::string>()) throw Error(file + ": name does not match the catalog index");
        ce.display = e.at("display");
        ce.provenance = e.at("provenance");
        if (ce.provenance.empty()) throw Error(ce.pair.name + ": empty provenance");
        ce.notes = e.value("notes", std::vector<std::string>{});
        std::size_t n = ce.pair.dim;
        for (const auto& a : e.at("automorphisms")) {
            ExpectedFamily f;
            f.label = a.at("label");
            f.text = a.at("matrix").get<std::vector<std::vector<std::string>>>();
            json rows = json::array();
            for (const auto& row : f.text) {
                json r = json::array();
                for (const auto& x : row) r.push_back(replace_radicals(x, f.radical_symbols));
                rows.push_back(r);
            }
            f.radical = !f.radical_symbols.empty();
            f.matrix.m = parse_matrix(rows, n, ce.pair.name + " automorphism " + f.label);
            for (const auto& x : a.at("exclusions")) {
                std::string s = replace_radicals(x.get<std::string>(), f.radical_symbols);
                f.matrix.exclusions.push_back(parse_expression(s).numerator().normalized());
            }
            ce.automorphisms.push_back(std::move(f));
        }
        for (const auto& inv : e.at("invariants")) {
            ExpectedInvariant ei;
            ei.label = inv.at("label");
            for (const auto& k : inv.at("kinds")) {
                auto kind = parse_kind(k.get<std::string>());
                if (!kind) throw Error(ce.pair.name + ": unknown kind " + k.get<std::string>());
                ei.kinds.push_back(*kind);
            }
            for (const auto& s : inv.at("slots")) ei.slots.push_back(parse_matrix(s, n, ce.pair.name + " " + ei.label));
            if (is_linear(ei.kinds.front()) && ei.slots.size() != slot_count(ei.kinds.front()))
                throw Error(ce.pair.name + ": " + ei.label + " has the wrong number of slots");
            ce.invariants.push_back(std::move(ei));
        }
        out.push_back(std::move(ce));
    }
    return out;
}

std::vector<CatalogEntry> load_builtin_catalog() {
    return load_catalog(default_catalog_dir());
}

const std::vector<long>& specialization_values() {
    static const std::vector<long> vals{0, 2, 3};
    return vals;
}

std::optional<AlgebraPair<Rational>> specialize_pair(const Pair& p, long v) {
    std::map<std::string, Rational> pt;
    for (const auto& name : p.params) pt[name] = Rational(v);
    for (const auto& e : p.exclusions)
        if (e.eval(pt).is_zero()) return std::nullopt;
    try {
        auto q = p.map([&](const RatFunc& x) { return x.eval(pt); });
        q.params.clear();
        q.exclusions.clear();
        return q;
    } catch (const SpecializationError&) {
        return std::nullopt;
    }
}

std::optional<AlgebraPair<Rational>> to_rational(const Pair& p) {
    if (!p.params.empty()) return std::nullopt;
    return p.map([](const RatFunc& x) { return x.constant_value(); });
}

}  // namespace cpa
