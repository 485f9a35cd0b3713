#pragma once

#include "cpa/matrix.hpp"
#include "cpa/poly.hpp"

#include <string>
#include <vector>

namespace cpa {

// entry(i, j, k) is the coefficient of e_k in e_i * e_j (0-based here; the
// text formats use 1-based indices).
template <class F>
class StructureTensor {
public:
    StructureTensor() = default;
    explicit StructureTensor(std::size_t n) : n_(n), c_(n * n * n, F(0)) {}

    std::size_t dim() const { return n_; }
    F& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
    const F& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    const std::vector<F>& entries() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const StructureTensor& a, const StructureTensor& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

    template <class Fn>
    auto map(Fn fn) const -> StructureTensor<decltype(fn(std::declval<const F&>()))> {
        StructureTensor<decltype(fn(std::declval<const F&>()))> t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) t(i, j, k) = fn((*this)(i, j, k));
        return t;
    }

private:
    std::size_t n_ = 0;
    std::vector<F> c_;
};

template <class F>
struct AlgebraPair {
    std::string name;
    std::size_t dim = 0;
    StructureTensor<F> bullet;
    StructureTensor<F> star;
    std::vector<std::string> params;
    std::vector<Poly> exclusions;

    const StructureTensor<F>& product(int which) const { return which == 0 ? bullet : star; }

    friend bool operator==(const AlgebraPair& a, const AlgebraPair& b) {
        return a.name == b.name && a.dim == b.dim && a.bullet == b.bullet && a.star == b.star && a.params == b.params &&
               a.exclusions == b.exclusions;
    }

    template <class Fn>
    auto map(Fn fn) const -> AlgebraPair<decltype(fn(std::declval<const F&>()))> {
        AlgebraPair<decltype(fn(std::declval<const F&>()))> p;
        p.name = name;
        p.dim = dim;
        p.bullet = bullet.map(fn);
        p.star = star.map(fn);
        p.params = params;
        p.exclusions = exclusions;
        return p;
    }
};

template <class F>
AlgebraPair<F> self_pair(const StructureTensor<F>& t, const std::string& name) {
    AlgebraPair<F> p;
    p.name = name;
    p.dim = t.dim();
    p.bullet = t;
    p.star = t;
    return p;
}

template <class F>
std::vector<F> multiply(const StructureTensor<F>& t, const std::vector<F>& x, const std::vector<F>& y) {
    std::size_t n = t.dim();
    if (x.size() != n || y.size() != n) throw DimensionError("vector length does not match algebra dimension");
    std::vector<F> out(n, F(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            F xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (!t(i, j, k).is_zero()) out[k] += xy * t(i, j, k);
        }
    }
    return out;
}

// Flat index of residual (i, j, k, q), 0-based: ((i*n + j)*n + k)*n + q.
inline std::size_t residual_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k, std::size_t q) {
    return ((i * n + j) * n + k) * n + q;
}

// Coefficient of e_q in (e_i e_j) e_k - e_i (e_j e_k), for all (i, j, k, q).
template <class F>
std::vector<F> associativity_residuals(const StructureTensor<F>& t) {
    std::size_t n = t.dim();
    std::vector<F> res(n * n * n * n, F(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t q = 0; q < n; ++q) {
                    F s(0);
                    for (std::size_t r = 0; r < n; ++r) {
                        if (!t(i, j, r).is_zero() && !t(r, k, q).is_zero()) s += t(i, j, r) * t(r, k, q);
                        if (!t(j, k, r).is_zero() && !t(i, r, q).is_zero()) s -= t(j, k, r) * t(i, r, q);
                    }
                    res[residual_index(n, i, j, k, q)] = s;
                }
    return res;
}

// Coefficient of e_q in (a.b)*c + (a*b).c - a.(b*c) - a*(b.c) on basis triples.
template <class F>
std::vector<F> compatibility_residuals(const AlgebraPair<F>& p) {
    std::size_t n = p.dim;
    const auto& a = p.bullet;
    const auto& b = p.star;
    std::vector<F> res(n * n * n * n, F(0));
    auto acc = [](F& s, const F& x, const F& y, bool plus) {
        if (x.is_zero() || y.is_zero()) return;
        if (plus) s += x * y;
        else s -= x * y;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t q = 0; q < n; ++q) {
                    F s(0);
                    for (std::size_t r = 0; r < n; ++r) {
                        acc(s, a(i, j, r), b(r, k, q), true);
                        acc(s, b(i, j, r), a(r, k, q), true);
                        acc(s, b(j, k, r), a(i, r, q), false);
                        acc(s, a(j, k, r), b(i, r, q), false);
                    }
                    res[residual_index(n, i, j, k, q)] = s;
                }
    return res;
}

// Coefficient of e_r in M(e_i e_j) - M(e_i) M(e_j) for both products; M maps
// src to dst with column j = M(e_j). Index (product*n + i)*n^2 + j*n + r.
template <class F>
std::vector<F> pair_hom_residuals(const Matrix<F>& M, const AlgebraPair<F>& src, const AlgebraPair<F>& dst) {
    std::size_t n = src.dim;
    if (dst.dim != n || M.rows() != n || M.cols() != n) throw DimensionError("homomorphism dimension mismatch");
    std::vector<F> res;
    res.reserve(2 * n * n * n);
    std::vector<std::vector<F>> cols(n, std::vector<F>(n, F(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r) cols[j][r] = M(r, j);
    for (int prod = 0; prod < 2; ++prod) {
        const auto& s = src.product(prod);
        const auto& d = dst.product(prod);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<F> lhs(n, F(0));
                for (std::size_t k = 0; k < n; ++k)
                    if (!s(i, j, k).is_zero())
                        for (std::size_t r = 0; r < n; ++r)
                            if (!M(r, k).is_zero()) lhs[r] += s(i, j, k) * M(r, k);
                std::vector<F> rhs = multiply(d, cols[i], cols[j]);
                for (std::size_t r = 0; r < n; ++r) res.push_back(lhs[r] - rhs[r]);
            }
    }
    return res;
}

// New basis f_j = sum_k P(k, j) e_k; returns the structure constants of both
// products in the new basis. Throws if P is singular.
template <class F>
AlgebraPair<F> change_of_basis(const AlgebraPair<F>& p, const Matrix<F>& P) {
    std::size_t n = p.dim;
    if (P.rows() != n || P.cols() != n) throw DimensionError("basis change matrix has the wrong size");
    auto Pinv = inverse(P);
    if (!Pinv) throw Error("basis change matrix is singular");
    AlgebraPair<F> out = p;
    for (int prod = 0; prod < 2; ++prod) {
        const auto& t = p.product(prod);
        StructureTensor<F> nt(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<F> v(n, F(0));
                for (std::size_t a = 0; a < n; ++a) {
                    if (P(a, i).is_zero()) continue;
                    for (std::size_t b = 0; b < n; ++b) {
                        if (P(b, j).is_zero()) continue;
                        F w = P(a, i) * P(b, j);
                        for (std::size_t k = 0; k < n; ++k)
                            if (!t(a, b, k).is_zero()) v[k] += w * t(a, b, k);
                    }
                }
                auto coords = Pinv->apply(v);
                for (std::size_t k = 0; k < n; ++k) nt(i, j, k) = coords[k];
            }
        (prod == 0 ? out.bullet : out.star) = nt;
    }
    return out;
}

template <class F>
bool all_zero(const std::vector<F>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <class F>
std::vector<std::size_t> nonzero_indices(const std::vector<F>& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.push_back(i);
    return out;
}

}  // namespace cpa
