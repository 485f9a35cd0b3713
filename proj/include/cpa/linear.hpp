#pragma once

#include "cpa/algebra.hpp"
#include "cpa/fp.hpp"
#include "cpa/kinds.hpp"
#include "cpa/ratfunc.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cpa {

// Unknown layout: slot s, map column `in` (the image of e_in), coordinate
// `out` lives at s*n^2 + in*n + out.
inline std::size_t unknown_index(std::size_t n, std::size_t slot, std::size_t in, std::size_t out) {
    return slot * n * n + in * n + out;
}

template <class F>
struct LinearSystem {
    Kind kind = Kind::Derivation;
    std::size_t dim = 0;
    std::size_t slots = 1;
    std::vector<std::vector<F>> rows;

    std::size_t unknowns() const { return slots * dim * dim; }

    template <class Fn>
    auto map(Fn fn) const -> LinearSystem<decltype(fn(std::declval<const F&>()))> {
        LinearSystem<decltype(fn(std::declval<const F&>()))> s;
        s.kind = kind;
        s.dim = dim;
        s.slots = slots;
        for (const auto& r : rows) {
            s.rows.emplace_back();
            for (const auto& x : r) s.rows.back().push_back(fn(x));
        }
        return s;
    }
};

template <class F>
struct SolutionSpace {
    Kind kind = Kind::Derivation;
    std::size_t dim = 0;
    std::size_t slots = 1;
    std::vector<std::vector<F>> basis;
    std::vector<Poly> exclusions;

    std::size_t freedim() const { return basis.size(); }
};

// Rows, in order: product (bullet, star), then for centroids the equality
// (eta(ab) = eta(a)b, eta(ab) = a eta(b)), then i, j, output coordinate r.
template <class F>
LinearSystem<F> build_system(Kind kind, const AlgebraPair<F>& p) {
    if (!is_linear(kind)) throw Error("build_system: " + kind_name(kind) + " is not a linear kind");
    std::size_t n = p.dim;
    LinearSystem<F> sys;
    sys.kind = kind;
    sys.dim = n;
    sys.slots = slot_count(kind);
    std::size_t N = sys.unknowns();
    // Adds coef * (coordinate `out` of slot(e_in)) to row.
    auto put = [&](std::vector<F>& row, std::size_t slot, std::size_t in, std::size_t out, const F& coef, bool plus) {
        if (coef.is_zero()) return;
        F& x = row[unknown_index(n, slot, in, out)];
        if (plus) x += coef;
        else x -= coef;
    };
    for (int prod = 0; prod < 2; ++prod) {
        const auto& t = p.product(prod);
        int equalities = kind == Kind::Centroid ? 2 : 1;
        for (int eq = 0; eq < equalities; ++eq)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t r = 0; r < n; ++r) {
                        std::vector<F> row(N, F(0));
                        for (std::size_t k = 0; k < n; ++k) {
                            switch (kind) {
                            case Kind::Derivation:
                                put(row, 0, k, r, t(i, j, k), true);
                                put(row, 0, i, k, t(k, j, r), false);
                                put(row, 0, j, k, t(i, k, r), false);
                                break;
                            case Kind::Centroid:
                                put(row, 0, k, r, t(i, j, k), true);
                                if (eq == 0) put(row, 0, i, k, t(k, j, r), false);
                                else put(row, 0, j, k, t(i, k, r), false);
                                break;
                            case Kind::QuasiCentroid:
                                put(row, 0, i, k, t(k, j, r), true);
                                put(row, 0, j, k, t(i, k, r), false);
                                break;
                            case Kind::QuasiDerivation:
                                put(row, 1, k, r, t(i, j, k), true);
                                put(row, 0, i, k, t(k, j, r), false);
                                put(row, 0, j, k, t(i, k, r), false);
                                break;
                            case Kind::GeneralizedDerivation:
                                put(row, 2, k, r, t(i, j, k), true);
                                put(row, 0, i, k, t(k, j, r), false);
                                put(row, 1, j, k, t(i, k, r), false);
                                break;
                            default: break;
                            }
                        }
                        sys.rows.push_back(std::move(row));
                    }
    }
    return sys;
}

inline std::size_t pivot_weight(const Rational&) { return 0; }
inline std::size_t pivot_weight(const FpElem&) { return 0; }
inline std::size_t pivot_weight(const RatFunc& x) {
    return x.numerator().total_degree() + x.denominator().total_degree();
}
inline void note_pivot(const Rational&, std::vector<Poly>&) {}
inline void note_pivot(const FpElem&, std::vector<Poly>&) {}
inline void note_pivot(const RatFunc& x, std::vector<Poly>& out) {
    if (x.numerator().is_constant()) return;
    Poly g = x.numerator().normalized();
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
}

// Reduced row echelon form in place; returns pivot columns. Pivot choice: in
// each column the candidate of least total degree, ties to the lowest row.
template <class F>
std::vector<std::size_t> rref(std::vector<std::vector<F>>& rows, std::size_t cols, std::vector<Poly>* exclusions = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t best = rows.size();
        std::size_t best_w = 0;
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][c].is_zero()) continue;
            std::size_t w = pivot_weight(rows[r][c]);
            if (best == rows.size() || w < best_w) {
                best = r;
                best_w = w;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[rank], rows[best]);
        auto& pr = rows[rank];
        if (exclusions) note_pivot(pr[c], *exclusions);
        F inv = F(1) / pr[c];
        for (std::size_t k = c; k < cols; ++k)
            if (!pr[k].is_zero()) pr[k] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            F f = rows[r][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!pr[k].is_zero()) rows[r][k] -= f * pr[k];
        }
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

// Basis of {x : row . x = 0 for every row}, one vector per non-pivot column.
template <class F>
std::vector<std::vector<F>> kernel(const std::vector<std::vector<F>>& input, std::size_t cols,
                                   std::vector<Poly>* exclusions = nullptr) {
    std::vector<std::vector<F>> rows;
    for (const auto& r : input)
        if (!all_zero(r)) rows.push_back(r);
    auto pivots = rref(rows, cols, exclusions);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<F> v(cols, F(0));
        v[f] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (!rows[r][f].is_zero()) v[pivots[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
SolutionSpace<F> nullspace(const LinearSystem<F>& s) {
    SolutionSpace<F> sp;
    sp.kind = s.kind;
    sp.dim = s.dim;
    sp.slots = s.slots;
    sp.basis = kernel(s.rows, s.unknowns(), &sp.exclusions);
    return sp;
}

template <class F>
bool satisfies(const LinearSystem<F>& s, const std::vector<F>& v) {
    for (const auto& row : s.rows) {
        F acc(0);
        for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero() && !v[k].is_zero()) acc += row[k] * v[k];
        if (!acc.is_zero()) return false;
    }
    return true;
}

template <class F>
std::size_t rank_of(std::vector<std::vector<F>> rows, std::size_t cols) {
    return rref(rows, cols).size();
}

template <class F>
std::vector<F> flatten(const std::vector<Matrix<F>>& slots) {
    std::vector<F> v;
    for (const auto& m : slots) {
        std::size_t n = m.rows();
        for (std::size_t in = 0; in < n; ++in)
            for (std::size_t out = 0; out < n; ++out) v.push_back(m(out, in));
    }
    return v;
}

template <class F>
std::vector<Matrix<F>> unflatten(const std::vector<F>& v, std::size_t n, std::size_t slots) {
    std::vector<Matrix<F>> out;
    for (std::size_t s = 0; s < slots; ++s) {
        Matrix<F> m(n, n);
        for (std::size_t in = 0; in < n; ++in)
            for (std::size_t o = 0; o < n; ++o) m(o, in) = v[unknown_index(n, s, in, o)];
        out.push_back(std::move(m));
    }
    return out;
}

template <class F>
bool in_span(const std::vector<std::vector<F>>& basis, const std::vector<F>& v, std::size_t len) {
    if (all_zero(v)) return true;
    auto rows = basis;
    std::size_t r0 = rank_of(rows, len);
    rows.push_back(v);
    return rank_of(rows, len) == r0;
}

template <class F>
bool membership(const SolutionSpace<F>& sp, const std::vector<Matrix<F>>& candidate) {
    if (candidate.size() != sp.slots) throw DimensionError("candidate has the wrong number of slots");
    for (const auto& m : candidate)
        if (m.rows() != sp.dim || m.cols() != sp.dim) throw DimensionError("candidate has the wrong size");
    return in_span(sp.basis, flatten(candidate), sp.slots * sp.dim * sp.dim);
}

inline RatFunc to_ratfunc(const Rational& x) { return RatFunc(x); }
inline RatFunc to_ratfunc(const RatFunc& x) { return x; }

// One matrix per slot with entries linear in fresh parameters t1..tk.
template <class F>
std::vector<Matrix<RatFunc>> format_solution(const SolutionSpace<F>& sp, const std::string& prefix = "t") {
    std::size_t N = sp.slots * sp.dim * sp.dim;
    std::vector<RatFunc> v(N);
    for (std::size_t b = 0; b < sp.basis.size(); ++b) {
        RatFunc t = RatFunc::variable(prefix + std::to_string(b + 1));
        for (std::size_t k = 0; k < N; ++k)
            if (!sp.basis[b][k].is_zero()) v[k] += t * to_ratfunc(sp.basis[b][k]);
    }
    return unflatten(v, sp.dim, sp.slots);
}

}  // namespace cpa
