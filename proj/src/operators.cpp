#include "cpa/operators.hpp"

#include "cpa/errors.hpp"

#include <algorithm>
#include <set>

namespace cpa {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Zero: return "ZERO";
    case Verdict::Nonzero: return "NONZERO";
    default: return "CONDITIONAL";
    }
}

std::size_t family_count(Kind k) {
    return k == Kind::Averaging ? 2 : 1;
}

std::size_t operator_residual_index(Kind k, std::size_t n, int product, std::size_t family, std::size_t i, std::size_t j,
                                    std::size_t q) {
    return (((static_cast<std::size_t>(product) * family_count(k) + family) * n + i) * n + j) * n + q;
}

namespace {

using Vec = std::vector<RatFunc>;

Vec unit(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = RatFunc(1);
    return v;
}

Vec column(const Matrix<RatFunc>& M, std::size_t j) {
    Vec v(M.rows());
    for (std::size_t r = 0; r < M.rows(); ++r) v[r] = M(r, j);
    return v;
}

Vec plus(Vec a, const Vec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

Vec minus(Vec a, const Vec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

Vec identity_residual(Kind kind, std::size_t family, const StructureTensor<RatFunc>& t, const Matrix<RatFunc>& M,
                      std::size_t i, std::size_t j) {
    std::size_t n = t.dim();
    Vec a = unit(n, i), b = unit(n, j);
    Vec Ma = column(M, i), Mb = column(M, j);
    auto mul = [&](const Vec& x, const Vec& y) { return multiply(t, x, y); };
    auto T = [&](const Vec& x) { return M.apply(x); };
    switch (kind) {
    case Kind::RotaBaxter: return minus(mul(Ma, Mb), T(plus(mul(Ma, b), mul(a, Mb))));
    case Kind::Nijenhuis: return minus(mul(Ma, Mb), T(minus(plus(mul(Ma, b), mul(a, Mb)), T(mul(a, b)))));
    case Kind::Averaging:
        if (family == 0) return minus(T(mul(Ma, b)), mul(Ma, Mb));
        return minus(mul(Ma, Mb), T(mul(a, Mb)));
    case Kind::Reynolds: return minus(T(mul(a, b)), T(minus(plus(mul(Ma, b), mul(a, Mb)), mul(Ma, Mb))));
    default: throw Error("operator_residuals: " + kind_name(kind) + " is not an operator identity");
    }
}

std::size_t degree_in_vars(const Poly& p, const std::vector<std::string>& vars) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < p.variables().size(); ++k)
        if (std::binary_search(vars.begin(), vars.end(), p.variables()[k])) idx.push_back(k);
    std::size_t d = 0;
    for (const auto& [e, c] : p.terms()) {
        std::size_t s = 0;
        for (auto k : idx) s += e[k];
        d = std::max(d, s);
    }
    return d;
}

std::vector<RatFunc> linear_kind_residuals(Kind kind, const AlgebraPair<RatFunc>& p, const Matrix<RatFunc>& M) {
    if (slot_count(kind) != 1) throw Error("verify_family: " + kind_name(kind) + " needs several maps");
    auto sys = build_system(kind, p);
    auto v = flatten(std::vector<Matrix<RatFunc>>{M});
    std::vector<RatFunc> out;
    out.reserve(sys.rows.size());
    for (const auto& row : sys.rows) {
        RatFunc acc;
        for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero() && !v[k].is_zero()) acc += row[k] * v[k];
        out.push_back(acc);
    }
    return out;
}

std::vector<RatFunc> residuals_for(Kind kind, const AlgebraPair<RatFunc>& p, const Matrix<RatFunc>& M) {
    if (kind == Kind::Automorphism) return pair_hom_residuals(M, p, p);
    if (is_linear(kind)) return linear_kind_residuals(kind, p, M);
    return operator_residuals(kind, p, M).residuals;
}

// Divides out every exclusion (and each variable of a monomial exclusion) as
// often as possible.
Poly strip_exclusions(Poly x, const std::vector<Poly>& exclusions) {
    std::vector<Poly> factors;
    for (const auto& e : exclusions) {
        if (e.is_constant()) continue;
        factors.push_back(e.normalized());
        if (e.is_monomial())
            for (const auto& v : e.variables()) factors.push_back(Poly::variable(v));
    }
    bool progress = true;
    while (progress && !x.is_constant()) {
        progress = false;
        for (const auto& f : factors) {
            while (!x.is_constant()) {
                auto q = exact_divide(x, f);
                if (!q) break;
                x = *q;
                progress = true;
            }
        }
    }
    return x;
}

}  // namespace

ResidualSet operator_residuals(Kind kind, const AlgebraPair<RatFunc>& p, const Matrix<RatFunc>& M) {
    std::size_t n = p.dim;
    if (M.rows() != n || M.cols() != n) throw DimensionError("operator matrix does not match algebra dimension");
    ResidualSet rs;
    rs.kind = kind;
    std::size_t F = family_count(kind);
    rs.residuals.resize(2 * F * n * n * n);
    for (int prod = 0; prod < 2; ++prod)
        for (std::size_t f = 0; f < F; ++f)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Vec r = identity_residual(kind, f, p.product(prod), M, i, j);
                    for (std::size_t q = 0; q < n; ++q) rs.residuals[operator_residual_index(kind, n, prod, f, i, j, q)] = r[q];
                }
    classify(rs, family_parameters(p, M));
    return rs;
}

std::vector<std::string> family_parameters(const AlgebraPair<RatFunc>& p, const Matrix<RatFunc>& M) {
    std::set<std::string> vars;
    for (const auto& x : M.data())
        for (const auto& v : x.variables()) vars.insert(v);
    for (const auto& v : p.params) vars.erase(v);
    return {vars.begin(), vars.end()};
}

void classify(ResidualSet& rs, const std::vector<std::string>& family_params) {
    rs.constraints.clear();
    rs.witness.reset();
    for (std::size_t k = 0; k < rs.residuals.size(); ++k) {
        const auto& r = rs.residuals[k];
        if (r.is_zero()) continue;
        Poly g = r.numerator().normalized();
        if (std::find(rs.constraints.begin(), rs.constraints.end(), g) == rs.constraints.end()) rs.constraints.push_back(g);
        if (!rs.witness && degree_in_vars(g, family_params) == 0) rs.witness = k;
    }
    if (rs.constraints.empty()) rs.verdict = Verdict::Zero;
    else if (rs.witness) rs.verdict = Verdict::Nonzero;
    else rs.verdict = Verdict::Conditional;
}

FamilyReport verify_family(Kind kind, const AlgebraPair<RatFunc>& p, const ParamMatrix& M) {
    FamilyReport rep;
    rep.residuals.kind = kind;
    rep.residuals.residuals = residuals_for(kind, p, M.m);
    classify(rep.residuals, family_parameters(p, M.m));
    rep.verdict = rep.residuals.verdict;
    if (kind != Kind::Automorphism) return rep;
    RatFunc det = determinant(M.m);
    rep.determinant = det;
    if (det.is_zero()) {
        rep.verdict = Verdict::Nonzero;
        return rep;
    }
    std::vector<Poly> excl = M.exclusions;
    excl.insert(excl.end(), p.exclusions.begin(), p.exclusions.end());
    Poly rest = strip_exclusions(det.numerator(), excl);
    rep.det_is_unit = rest.is_constant();
    if (!rep.det_is_unit) {
        rep.det_remainder = rest.normalized();
        if (rep.verdict == Verdict::Zero) rep.verdict = Verdict::Conditional;
    }
    return rep;
}

Matrix<RatFunc> instantiate(const Matrix<RatFunc>& pattern, const std::vector<std::string>& params,
                            const std::vector<RatFunc>& values) {
    std::map<std::string, RatFunc> sub;
    for (std::size_t k = 0; k < params.size(); ++k) sub.emplace(params[k], values[k]);
    return pattern.map([&](const RatFunc& x) { return x.substitute(sub); });
}

AnsatzResult ansatz_constraints(Kind kind, const AlgebraPair<RatFunc>& p, const ParamMatrix& pattern) {
    AnsatzResult out;
    ResidualSet rs;
    rs.kind = kind;
    rs.residuals = residuals_for(kind, p, pattern.m);
    auto params = family_parameters(p, pattern.m);
    classify(rs, params);
    out.constraints = rs.constraints;
    out.linear = std::all_of(out.constraints.begin(), out.constraints.end(),
                             [&](const Poly& c) { return degree_in_vars(c, params) <= 1; });
    if (!out.linear) return out;
    // Row per constraint: coefficients of each parameter, then the negated constant part.
    std::size_t k = params.size();
    std::vector<std::vector<RatFunc>> rows;
    for (const auto& c : out.constraints) {
        std::vector<RatFunc> row(k + 1);
        std::vector<std::vector<std::pair<Exponents, Rational>>> parts(k + 1);
        const auto& vars = c.variables();
        for (const auto& [e, coef] : c.terms()) {
            std::size_t slot = k;
            Exponents rest = e;
            for (std::size_t v = 0; v < vars.size(); ++v) {
                auto it = std::lower_bound(params.begin(), params.end(), vars[v]);
                if (it != params.end() && *it == vars[v] && e[v]) {
                    slot = it - params.begin();
                    rest[v] = 0;
                }
            }
            parts[slot].emplace_back(rest, coef);
        }
        for (std::size_t s = 0; s < k; ++s) row[s] = RatFunc(Poly::from_terms(vars, parts[s]));
        row[k] = -RatFunc(Poly::from_terms(vars, parts[k]));
        rows.push_back(std::move(row));
    }
    auto pivots = rref(rows, k + 1);
    AffineSolution sol;
    sol.params = params;
    if (!pivots.empty() && pivots.back() == k) {
        out.consistent = false;
        return out;
    }
    sol.offset.assign(k, RatFunc());
    for (std::size_t r = 0; r < pivots.size(); ++r) sol.offset[pivots[r]] = rows[r][k];
    std::vector<bool> is_pivot(k, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        std::vector<RatFunc> v(k);
        v[f] = RatFunc(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
        sol.directions.push_back(std::move(v));
    }
    out.solution = std::move(sol);
    return out;
}

}  // namespace cpa
