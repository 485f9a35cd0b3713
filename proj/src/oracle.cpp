#include "cpa/oracle.hpp"

#include "cpa/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace cpa {

namespace {

using Vec = std::vector<std::int64_t>;

class Search {
public:
    Search(Kind kind, const AlgebraPair<Rational>& p, std::int64_t q, std::uint64_t guard)
        : kind_(kind), n_(p.dim), q_(q), guard_(guard), m_(n_ * n_, 0) {
        for (int prod = 0; prod < 2; ++prod) {
            t_[prod].assign(n_ * n_ * n_, 0);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    for (std::size_t k = 0; k < n_; ++k)
                        t_[prod][(i * n_ + j) * n_ + k] = reduce_mod_p(p.product(prod)(i, j, k), q).value();
        }
        build_equations();
    }

    OracleResult run() {
        for (auto k : constant_eqs_)
            if (!holds(k)) return std::move(result_);
        descend(0);
        std::sort(result_.solutions.begin(), result_.solutions.end());
        return std::move(result_);
    }

private:
    struct Equation {
        int prod;
        int family;
        std::size_t i, j, q;
    };

    std::int64_t md(std::int64_t v) const {
        v %= q_;
        return v < 0 ? v + q_ : v;
    }

    // Entry `in*n + out` holds coordinate `out` of M(e_in).
    std::int64_t entry(std::size_t out, std::size_t in) const { return m_[in * n_ + out]; }

    Vec e(std::size_t i) const {
        Vec v(n_, 0);
        v[i] = 1;
        return v;
    }

    Vec col(std::size_t i) const {
        Vec v(n_);
        for (std::size_t r = 0; r < n_; ++r) v[r] = entry(r, i);
        return v;
    }

    Vec apply(const Vec& x) const {
        Vec out(n_, 0);
        for (std::size_t c = 0; c < n_; ++c) {
            if (!x[c]) continue;
            for (std::size_t r = 0; r < n_; ++r) out[r] = md(out[r] + entry(r, c) * x[c]);
        }
        return out;
    }

    Vec mul(int prod, const Vec& x, const Vec& y) const {
        Vec out(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!y[j]) continue;
                std::int64_t xy = md(x[i] * y[j]);
                for (std::size_t k = 0; k < n_; ++k) out[k] = md(out[k] + xy * t_[prod][(i * n_ + j) * n_ + k]);
            }
        }
        return out;
    }

    static Vec add(Vec a, const Vec& b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
        return a;
    }

    static Vec sub(Vec a, const Vec& b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
        return a;
    }

    // Structural dependencies: nullopt marks a coordinate that is identically
    // zero, otherwise the set of entries it can depend on.
    using Dep = std::optional<std::set<std::size_t>>;
    using DVec = std::vector<Dep>;

    struct NumOps {
        const Search* s;
        Vec e(std::size_t i) const { return s->e(i); }
        Vec col(std::size_t i) const { return s->col(i); }
        Vec apply(const Vec& x) const { return s->apply(x); }
        Vec mul(int prod, const Vec& x, const Vec& y) const { return s->mul(prod, x, y); }
        static Vec add(const Vec& a, const Vec& b) { return Search::add(a, b); }
        static Vec sub(const Vec& a, const Vec& b) { return Search::sub(a, b); }
    };

    struct DepOps {
        const Search* s;
        static void join(Dep& into, const Dep& from) {
            if (!from) return;
            if (!into) into.emplace();
            into->insert(from->begin(), from->end());
        }
        DVec e(std::size_t i) const {
            DVec v(s->n_);
            v[i].emplace();
            return v;
        }
        DVec col(std::size_t i) const {
            DVec v(s->n_);
            for (std::size_t r = 0; r < s->n_; ++r) v[r] = std::set<std::size_t>{i * s->n_ + r};
            return v;
        }
        DVec apply(const DVec& x) const {
            std::size_t n = s->n_;
            DVec out(n);
            for (std::size_t c = 0; c < n; ++c) {
                if (!x[c]) continue;
                for (std::size_t r = 0; r < n; ++r) {
                    join(out[r], x[c]);
                    out[r]->insert(c * n + r);
                }
            }
            return out;
        }
        DVec mul(int prod, const DVec& x, const DVec& y) const {
            std::size_t n = s->n_;
            DVec out(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (!x[i] || !y[j]) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        if (s->t_[prod][(i * n + j) * n + k]) {
                            join(out[k], x[i]);
                            join(out[k], y[j]);
                        }
                }
            return out;
        }
        static DVec add(DVec a, const DVec& b) {
            for (std::size_t k = 0; k < a.size(); ++k) join(a[k], b[k]);
            return a;
        }
        static DVec sub(const DVec& a, const DVec& b) { return add(a, b); }
    };

    // Difference of the two sides of the identity for (e_i, e_j).
    template <class O>
    auto residual(const O& o, int prod, int family, std::size_t i, std::size_t j) const {
        auto a = o.e(i), b = o.e(j), Ma = o.col(i), Mb = o.col(j);
        auto mul = [&](const auto& x, const auto& y) { return o.mul(prod, x, y); };
        switch (kind_) {
        case Kind::Derivation: return o.sub(o.apply(mul(a, b)), o.add(mul(Ma, b), mul(a, Mb)));
        case Kind::Centroid:
            return family == 0 ? o.sub(o.apply(mul(a, b)), mul(Ma, b)) : o.sub(o.apply(mul(a, b)), mul(a, Mb));
        case Kind::QuasiCentroid: return o.sub(mul(Ma, b), mul(a, Mb));
        case Kind::RotaBaxter: return o.sub(mul(Ma, Mb), o.apply(o.add(mul(Ma, b), mul(a, Mb))));
        case Kind::Nijenhuis: return o.sub(mul(Ma, Mb), o.apply(o.sub(o.add(mul(Ma, b), mul(a, Mb)), o.apply(mul(a, b)))));
        case Kind::Averaging:
            return family == 0 ? o.sub(o.apply(mul(Ma, b)), mul(Ma, Mb)) : o.sub(mul(Ma, Mb), o.apply(mul(a, Mb)));
        case Kind::Reynolds: return o.sub(o.apply(mul(a, b)), o.apply(o.sub(o.add(mul(Ma, b), mul(a, Mb)), mul(Ma, Mb))));
        case Kind::Automorphism: return o.sub(o.apply(mul(a, b)), mul(Ma, Mb));
        default: throw Error("oracle: unsupported kind " + kind_name(kind_));
        }
    }

    void build_equations() {
        int families = (kind_ == Kind::Centroid || kind_ == Kind::Averaging) ? 2 : 1;
        std::size_t N = n_ * n_;
        std::vector<std::set<std::size_t>> deps;
        for (int prod = 0; prod < 2; ++prod)
            for (int f = 0; f < families; ++f)
                for (std::size_t i = 0; i < n_; ++i)
                    for (std::size_t j = 0; j < n_; ++j)
                        for (std::size_t q = 0; q < n_; ++q) {
                            Dep d = residual(DepOps{this}, prod, f, i, j)[q];
                            if (!d) continue;
                            if (d->empty()) {
                                constant_eqs_.push_back(eqs_.size());
                                eqs_.push_back({prod, f, i, j, q});
                                deps.emplace_back();
                                continue;
                            }
                            eqs_.push_back({prod, f, i, j, q});
                            deps.push_back(std::move(*d));
                        }
        // Greedy order: next variable is the one completing the most equations.
        std::vector<std::size_t> missing(eqs_.size());
        for (std::size_t k = 0; k < eqs_.size(); ++k) missing[k] = deps[k].size();
        std::vector<bool> used(N, false);
        check_at_.assign(N, {});
        for (std::size_t step = 0; step < N; ++step) {
            std::size_t best = N, best_done = 0, best_touch = 0;
            for (std::size_t v = 0; v < N; ++v) {
                if (used[v]) continue;
                std::size_t done = 0, touch = 0;
                for (std::size_t k = 0; k < eqs_.size(); ++k)
                    if (missing[k] && deps[k].count(v)) {
                        ++touch;
                        if (missing[k] == 1) ++done;
                    }
                if (best == N || done > best_done || (done == best_done && touch > best_touch)) {
                    best = v;
                    best_done = done;
                    best_touch = touch;
                }
            }
            used[best] = true;
            order_.push_back(best);
            for (std::size_t k = 0; k < eqs_.size(); ++k)
                if (missing[k] && deps[k].count(best) && --missing[k] == 0) check_at_[step].push_back(k);
        }
    }

    bool holds(std::size_t k) const {
        const auto& eq = eqs_[k];
        return md(residual(NumOps{this}, eq.prod, eq.family, eq.i, eq.j)[eq.q]) == 0;
    }

    bool invertible() const {
        std::vector<Vec> a(n_, Vec(n_));
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) a[r][c] = entry(r, c);
        for (std::size_t c = 0; c < n_; ++c) {
            std::size_t p = c;
            while (p < n_ && !a[p][c]) ++p;
            if (p == n_) return false;
            std::swap(a[p], a[c]);
            FpElem inv = FpElem(a[c][c], q_).inverse();
            for (std::size_t r = c + 1; r < n_; ++r) {
                std::int64_t f = md(a[r][c] * inv.value());
                for (std::size_t k = c; k < n_; ++k) a[r][k] = md(a[r][k] - f * a[c][k]);
            }
        }
        return true;
    }

    void descend(std::size_t step) {
        if (step == order_.size()) {
            if (kind_ == Kind::Automorphism && !invertible()) return;
            result_.solutions.push_back(m_);
            return;
        }
        std::size_t v = order_[step];
        for (std::int64_t val = 0; val < q_; ++val) {
            if (++result_.nodes > guard_)
                throw GuardExceeded("oracle search exceeded " + std::to_string(guard_) + " nodes");
            m_[v] = val;
            bool ok = true;
            for (auto k : check_at_[step])
                if (!holds(k)) {
                    ok = false;
                    break;
                }
            if (ok) descend(step + 1);
        }
        m_[v] = 0;
    }

    Kind kind_;
    std::size_t n_;
    std::int64_t q_;
    std::uint64_t guard_;
    Vec t_[2];
    Vec m_;
    std::vector<Equation> eqs_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> constant_eqs_;
    std::vector<std::vector<std::size_t>> check_at_;
    OracleResult result_;
};

}  // namespace

OracleResult exhaustive_solutions_mod_p(Kind kind, const AlgebraPair<Rational>& p, std::int64_t q, std::uint64_t guard) {
    if (!is_prime(q)) throw Error("oracle modulus " + std::to_string(q) + " is not prime");
    if (kind == Kind::QuasiDerivation || kind == Kind::GeneralizedDerivation)
        throw Error("oracle: " + kind_name(kind) + " has several unknown maps and is not enumerated");
    if (!is_linear(kind)) {
        double total = 1;
        for (std::size_t k = 0; k < p.dim * p.dim; ++k) total *= static_cast<double>(q);
        if (total > static_cast<double>(guard))
            throw GuardExceeded(std::to_string(q) + "^" + std::to_string(p.dim * p.dim) + " matrices exceed the enumeration guard");
    }
    return Search(kind, p, q, guard).run();
}

Matrix<FpElem> oracle_matrix(const std::vector<std::int64_t>& sol, std::size_t n, std::int64_t q) {
    Matrix<FpElem> m(n, n);
    for (std::size_t in = 0; in < n; ++in)
        for (std::size_t out = 0; out < n; ++out) m(out, in) = FpElem(sol[in * n + out], q);
    return m;
}

}  // namespace cpa
