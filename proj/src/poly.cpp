#include "cpa/poly.hpp"

#include "cpa/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cpa {

std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return b < a;
}

std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a == b) return a;
    std::vector<std::string> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Poly Poly::variable(const std::string& name) {
    Poly p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

Poly Poly::from_terms(std::vector<std::string> vars, const std::vector<std::pair<Exponents, Rational>>& terms) {
    std::vector<std::string> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> where(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
        where[i] = std::lower_bound(sorted.begin(), sorted.end(), vars[i]) - sorted.begin();
    Poly p;
    p.vars_ = sorted;
    for (const auto& [e, c] : terms) {
        if (e.size() != vars.size()) throw Error("exponent vector length does not match variable count");
        if (c.is_zero()) continue;
        Exponents m(sorted.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) m[where[i]] += e[i];
        auto [it, fresh] = p.terms_.emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) p.terms_.erase(it);
        }
    }
    p.canonicalize();
    return p;
}

void Poly::canonicalize() {
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
    std::vector<std::string> nv;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) nv.push_back(vars_[i]);
    TermMap nt;
    for (const auto& [e, c] : terms_) {
        Exponents m;
        m.reserve(nv.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            if (used[i]) m.push_back(e[i]);
        nt.emplace(std::move(m), c);
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

Poly::TermMap Poly::terms_over(const std::vector<std::string>& vars) const {
    if (vars == vars_) return terms_;
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end() || *it != vars_[i]) throw Error("variable list is not a superset");
        where[i] = it - vars.begin();
    }
    TermMap out;
    for (const auto& [e, c] : terms_) {
        Exponents m(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) m[where[i]] = e[i];
        out.emplace(std::move(m), c);
    }
    return out;
}

bool Poly::is_one() const {
    return vars_.empty() && terms_.size() == 1 && terms_.begin()->second.is_one();
}

Rational Poly::constant_value() const {
    if (!is_constant()) throw Error("polynomial " + to_string() + " is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Poly::constant_term() const {
    if (terms_.empty()) return Rational(0);
    const auto& [e, c] = *terms_.begin();
    return cpa::total_degree(e) == 0 ? c : Rational(0);
}

std::uint32_t Poly::total_degree() const {
    return terms_.empty() ? 0 : cpa::total_degree(terms_.rbegin()->first);
}

std::uint32_t Poly::degree_in(const std::string& var) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) return 0;
    std::size_t k = it - vars_.begin();
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
}

bool Poly::contains(const std::string& var) const {
    return std::binary_search(vars_.begin(), vars_.end(), var);
}

namespace {

void add_into(Poly::TermMap& acc, const Exponents& e, const Rational& c) {
    auto [it, fresh] = acc.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (vars_ != o.vars_) {
        auto vars = merge_variables(vars_, o.vars_);
        terms_ = terms_over(vars);
        vars_ = std::move(vars);
        for (const auto& [e, c] : o.terms_over(vars_)) add_into(terms_, e, c);
    } else {
        for (const auto& [e, c] : o.terms_) add_into(terms_, e, c);
    }
    canonicalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    return *this += -o;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        vars_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.is_constant()) return b * a.constant_value();
    if (b.is_constant()) return a * b.constant_value();
    auto vars = merge_variables(a.vars_, b.vars_);
    auto ta = a.terms_over(vars), tb = b.terms_over(vars);
    Poly p;
    p.vars_ = vars;
    Exponents m(vars.size());
    for (const auto& [ea, ca] : ta)
        for (const auto& [eb, cb] : tb) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ea[i] + eb[i];
            add_into(p.terms_, m, ca * cb);
        }
    p.canonicalize();
    return p;
}

Poly& Poly::operator*=(const Poly& o) {
    return *this = *this * o;
}

Poly Poly::pow(unsigned k) const {
    Poly result(1), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

Poly Poly::normalized() const {
    if (terms_.empty()) return *this;
    return *this * terms_.begin()->second.inverse();
}

Rational Poly::eval(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> vals;
    vals.reserve(vars_.size());
    for (const auto& v : vars_) {
        auto it = point.find(v);
        if (it == point.end()) throw Error("no value given for parameter " + v);
        vals.push_back(it->second);
    }
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        mpq_class t = c.raw();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= vals[i].raw();
        sum += Rational(t);
    }
    return sum;
}

Poly Poly::substitute(const std::map<std::string, Poly>& values) const {
    bool touched = std::any_of(vars_.begin(), vars_.end(), [&](const std::string& v) { return values.count(v) > 0; });
    if (!touched) return *this;
    Poly out;
    for (const auto& [e, c] : terms_) {
        Poly t(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            auto it = values.find(vars_[i]);
            t *= (it == values.end() ? Poly::variable(vars_[i]) : it->second).pow(e[i]);
        }
        out += t;
    }
    return out;
}

std::map<std::uint32_t, Poly> Poly::coefficients_in(const std::string& var) const {
    std::map<std::uint32_t, Poly> out;
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) {
        if (!is_zero()) out.emplace(0u, *this);
        return out;
    }
    std::size_t k = it - vars_.begin();
    std::map<std::uint32_t, std::vector<std::pair<Exponents, Rational>>> parts;
    for (const auto& [e, c] : terms_) {
        Exponents m = e;
        m[k] = 0;
        parts[e[k]].emplace_back(std::move(m), c);
    }
    for (auto& [d, ts] : parts) out.emplace(d, Poly::from_terms(vars_, ts));
    return out;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += '*';
            mono += vars_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string s;
        if (mono.empty()) s = c.to_string();
        else if (c.is_one()) s = mono;
        else if (c == Rational(-1)) s = "-" + mono;
        else s = c.to_string() + "*" + mono;
        if (!out.empty() && s[0] != '-') out += '+';
        out += s;
    }
    return out;
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a * b.constant_value().inverse();
    for (const auto& v : b.variables())
        if (!a.contains(v)) return std::nullopt;
    auto vars = a.variables();
    auto rem = a.terms();
    auto tb = b.terms_over(vars);
    const auto& [lb, lcb] = *tb.rbegin();
    std::vector<std::pair<Exponents, Rational>> quotient;
    Exponents shift(vars.size());
    while (!rem.empty()) {
        const auto& [lr, lcr] = *rem.rbegin();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            shift[i] = lr[i] - lb[i];
        }
        Rational f = lcr / lcb;
        quotient.emplace_back(shift, f);
        Exponents m(vars.size());
        for (const auto& [eb, cb] : tb) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = eb[i] + shift[i];
            add_into(rem, m, -(f * cb));
        }
    }
    return Poly::from_terms(vars, quotient);
}

namespace {

Poly content_in(const Poly& p, const std::string& var);

Poly primitive_part(const Poly& p, const std::string& var) {
    Poly c = content_in(p, var);
    if (c.is_constant()) return p;
    return *exact_divide(p, c);
}

Poly pseudo_remainder(Poly r, const Poly& b, const std::string& var) {
    auto cb = b.coefficients_in(var);
    std::uint32_t db = cb.rbegin()->first;
    const Poly& lcb = cb.rbegin()->second;
    Poly x = Poly::variable(var);
    while (!r.is_zero()) {
        std::uint32_t dr = r.degree_in(var);
        if (dr < db) break;
        Poly lcr = r.coefficients_in(var).rbegin()->second;
        r = lcb * r - lcr * x.pow(dr - db) * b;
        r = r.normalized();
    }
    return r;
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, const std::string& var) {
    Poly g;
    for (const auto& [d, c] : p.coefficients_in(var)) {
        if (c.is_constant()) return Poly(1);
        g = g.is_zero() ? c : gcd_rec(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Poly monomial_gcd(const Poly& mono, const Poly& other) {
    auto vars = merge_variables(mono.variables(), other.variables());
    auto tm = mono.terms_over(vars);
    Exponents m = tm.begin()->first;
    for (const auto& [e, c] : other.terms_over(vars))
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    return Poly::from_terms(vars, {{m, Rational(1)}});
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a.is_monomial()) return monomial_gcd(a, b);
    if (b.is_monomial()) return monomial_gcd(b, a);
    auto vars = merge_variables(a.variables(), b.variables());
    const std::string& x = vars.front();
    if (!a.contains(x)) return gcd_rec(a, content_in(b, x));
    if (!b.contains(x)) return gcd_rec(content_in(a, x), b);
    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly g = gcd_rec(ca, cb);
    Poly pa = ca.is_constant() ? a : *exact_divide(a, ca);
    Poly pb = cb.is_constant() ? b : *exact_divide(b, cb);
    if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
    while (true) {
        Poly r = pseudo_remainder(pa, pb, x);
        if (r.is_zero()) break;
        if (r.degree_in(x) == 0) {
            pb = Poly(1);
            break;
        }
        pa = std::move(pb);
        pb = primitive_part(r.normalized(), x);
    }
    if (!pb.is_constant()) pb = primitive_part(pb, x);
    return g.is_constant() ? pb : g * pb;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    return gcd_rec(a, b).normalized();
}

}  // namespace cpa
