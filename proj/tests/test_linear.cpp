#include "cpa/linear.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>

using cpa::Kind;
using cpa::Matrix;
using cpa::Rational;
namespace ct = cpa::testing;

namespace {

// Brute-force count over F_p of n x n maps D (column j = D(e_j)) satisfying
// the kind's identities, written directly from the definitions.
long brute_count(Kind kind, const cpa::AlgebraPair<Rational>& pr, int p) {
    std::size_t n = pr.dim;
    auto red = [&](const Rational& x) {
        long num = mpz_class(x.numerator() % p).get_si(), den = mpz_class(x.denominator() % p).get_si();
        long inv = 1;
        for (int k = 0; k < p - 2; ++k) inv = inv * den % p;
        return ((num * inv) % p + p) % p;
    };
    std::vector<std::vector<long>> T[2];
    for (int prod = 0; prod < 2; ++prod)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<long> v(n);
                for (std::size_t k = 0; k < n; ++k) v[k] = red(pr.product(prod)(i, j, k));
                T[prod].push_back(v);
            }
    std::size_t N = n * n;
    std::vector<long> d(N, 0);
    auto D = [&](std::size_t col, std::size_t row) { return d[col * n + row]; };
    auto mul = [&](int prod, const std::vector<long>& x, const std::vector<long>& y) {
        std::vector<long> out(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) out[k] = (out[k] + x[i] * y[j] % p * T[prod][i * n + j][k]) % p;
        return out;
    };
    auto apply = [&](const std::vector<long>& x) {
        std::vector<long> out(n, 0);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) out[r] = (out[r] + D(c, r) * x[c]) % p;
        return out;
    };
    auto e = [&](std::size_t i) {
        std::vector<long> v(n, 0);
        v[i] = 1;
        return v;
    };
    auto eqv = [&](std::vector<long> a, const std::vector<long>& b) {
        for (std::size_t k = 0; k < n; ++k)
            if (((a[k] - b[k]) % p + p) % p) return false;
        return true;
    };
    auto add = [&](std::vector<long> a, const std::vector<long>& b) {
        for (std::size_t k = 0; k < n; ++k) a[k] = (a[k] + b[k]) % p;
        return a;
    };
    long count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos < N) {
            for (long v = 0; v < p; ++v) {
                d[pos] = v;
                rec(pos + 1);
            }
            return;
        }
        for (int prod = 0; prod < 2; ++prod)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    auto ab = mul(prod, e(i), e(j));
                    auto left = mul(prod, apply(e(i)), e(j));
                    auto right = mul(prod, e(i), apply(e(j)));
                    bool ok = true;
                    if (kind == Kind::Derivation) ok = eqv(apply(ab), add(left, right));
                    if (kind == Kind::Centroid) ok = eqv(apply(ab), left) && eqv(apply(ab), right);
                    if (kind == Kind::QuasiCentroid) ok = eqv(left, right);
                    if (!ok) return;
                }
        ++count;
    };
    rec(0);
    return count;
}

long ipow(long b, std::size_t e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

std::vector<Matrix<Rational>> one(const Matrix<Rational>& m) { return {m}; }

}  // namespace

TEST(BuildSystem, RowAndUnknownCounts) {
    auto p = ct::a21_a24();
    auto d = cpa::build_system(Kind::Derivation, p);
    EXPECT_EQ(d.rows.size(), 16u);
    EXPECT_EQ(d.unknowns(), 4u);
    auto c = cpa::build_system(Kind::Centroid, p);
    EXPECT_EQ(c.rows.size(), 32u);
    EXPECT_EQ(c.unknowns(), 4u);
    cpa::AlgebraPair<Rational> p3;
    p3.dim = 3;
    p3.bullet = cpa::StructureTensor<Rational>(3);
    p3.star = cpa::StructureTensor<Rational>(3);
    auto g = cpa::build_system(Kind::GeneralizedDerivation, p3);
    EXPECT_EQ(g.rows.size(), 54u);
    EXPECT_EQ(g.unknowns(), 27u);
    auto q = cpa::build_system(Kind::QuasiDerivation, p3);
    EXPECT_EQ(q.rows.size(), 54u);
    EXPECT_EQ(q.unknowns(), 18u);
    EXPECT_THROW(cpa::build_system(Kind::RotaBaxter, p), cpa::Error);
}

TEST(Nullspace, DerivationsOfSingleAlgebra) {
    auto a = ct::tensor<Rational>(2, {{1, 1, 2, Rational(1)}});
    auto p = ct::pair<Rational>("A2_01", a, cpa::StructureTensor<Rational>(2));
    auto sp = cpa::nullspace(cpa::build_system(Kind::Derivation, p));
    ASSERT_EQ(sp.freedim(), 2u);
    EXPECT_EQ(brute_count(Kind::Derivation, p, 5), 25);
    // d1: e1 -> e1, e2 -> 2e2;  d2: e1 -> e2, e2 -> 0.
    auto d1 = Matrix<Rational>::from_rows({{Rational(1), Rational(0)}, {Rational(0), Rational(2)}});
    auto d2 = Matrix<Rational>::from_rows({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}});
    EXPECT_TRUE(cpa::membership(sp, one(d1)));
    EXPECT_TRUE(cpa::membership(sp, one(d2)));
    EXPECT_FALSE(cpa::membership(sp, one(Matrix<Rational>::identity(2))));
    auto shown = cpa::format_solution(sp);
    ASSERT_EQ(shown.size(), 1u);
    EXPECT_TRUE(shown[0](0, 1).is_zero());
    EXPECT_EQ(shown[0](1, 1), shown[0](0, 0) * cpa::RatFunc(2));
}

TEST(Nullspace, BasisSatisfiesSystem) {
    auto p = ct::a21_a24();
    for (Kind k : cpa::linear_kinds()) {
        auto sys = cpa::build_system(k, p);
        auto sp = cpa::nullspace(sys);
        for (const auto& v : sp.basis) ASSERT_TRUE(cpa::satisfies(sys, v)) << cpa::kind_name(k);
        EXPECT_TRUE(sp.exclusions.empty());
    }
}

TEST(Nullspace, PairCountsAgreeWithBruteForce) {
    auto p = ct::a21_a24();
    for (Kind k : {Kind::Derivation, Kind::Centroid, Kind::QuasiCentroid})
        for (int prime : {5, 7}) {
            auto sys = cpa::build_system(k, p).map([&](const Rational& x) { return cpa::reduce_mod_p(x, prime); });
            auto sp = cpa::nullspace(sys);
            EXPECT_EQ(brute_count(k, p, prime), ipow(prime, sp.freedim())) << cpa::kind_name(k) << " mod " << prime;
            auto sq = cpa::nullspace(cpa::build_system(k, p));
            EXPECT_EQ(sp.freedim(), sq.freedim());
        }
}

TEST(Membership, TrivialElements) {
    auto p = ct::a21_a24();
    for (Kind k : cpa::linear_kinds()) {
        auto sp = cpa::nullspace(cpa::build_system(k, p));
        std::vector<Matrix<Rational>> zero(sp.slots, Matrix<Rational>(2, 2));
        EXPECT_TRUE(cpa::membership(sp, zero));
    }
    auto cen = cpa::nullspace(cpa::build_system(Kind::Centroid, p));
    EXPECT_TRUE(cpa::membership(cen, one(Matrix<Rational>::identity(2))));
    EXPECT_THROW(cpa::membership(cen, {}), cpa::DimensionError);
}

TEST(Membership, RandomCombinationsAndFormattedSolutions) {
    std::mt19937_64 rng(ct::seed());
    auto p = ct::a21_a24();
    for (Kind k : cpa::linear_kinds()) {
        auto sp = cpa::nullspace(cpa::build_system(k, p));
        auto shown = cpa::format_solution(sp);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Rational> v(sp.slots * 4, Rational(0));
            std::map<std::string, Rational> pt;
            for (std::size_t b = 0; b < sp.freedim(); ++b) {
                Rational c = ct::random_rational(rng);
                pt["t" + std::to_string(b + 1)] = c;
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * sp.basis[b][i];
            }
            EXPECT_TRUE(cpa::membership(sp, cpa::unflatten(v, 2, sp.slots)));
            std::vector<Matrix<Rational>> at;
            for (const auto& m : shown) at.push_back(m.map([&](const cpa::RatFunc& x) { return x.eval(pt); }));
            EXPECT_TRUE(cpa::membership(sp, at));
            EXPECT_EQ(cpa::flatten(at), v);
        }
    }
}

TEST(Nullspace, DegenerateZeroProducts) {
    cpa::AlgebraPair<Rational> p;
    p.dim = 3;
    p.bullet = cpa::StructureTensor<Rational>(3);
    p.star = cpa::StructureTensor<Rational>(3);
    for (Kind k : cpa::linear_kinds()) {
        auto sp = cpa::nullspace(cpa::build_system(k, p));
        EXPECT_EQ(sp.freedim(), cpa::slot_count(k) * 9);
    }
}

TEST(Closure, DerivationsAndCentroids) {
    auto p = ct::a21_a24();
    auto single = ct::pair<Rational>("A2_01", p.bullet, cpa::StructureTensor<Rational>(2));
    for (const auto& q : {p, single}) {
        auto der = cpa::nullspace(cpa::build_system(Kind::Derivation, q));
        auto mats = [&](const cpa::SolutionSpace<Rational>& sp) {
            std::vector<Matrix<Rational>> out;
            for (const auto& v : sp.basis) out.push_back(cpa::unflatten(v, 2, 1)[0]);
            return out;
        };
        for (const auto& a : mats(der))
            for (const auto& b : mats(der)) EXPECT_TRUE(cpa::membership(der, one(a * b - b * a)));
        auto cen = cpa::nullspace(cpa::build_system(Kind::Centroid, q));
        auto qc = cpa::build_system(Kind::QuasiCentroid, q);
        for (const auto& a : mats(cen)) {
            EXPECT_TRUE(cpa::satisfies(qc, cpa::flatten(one(a))));
            for (const auto& b : mats(cen)) EXPECT_TRUE(cpa::membership(cen, one(a * b)));
        }
        auto qd = cpa::build_system(Kind::QuasiDerivation, q);
        for (const auto& d : mats(der)) EXPECT_TRUE(cpa::satisfies(qd, cpa::flatten(std::vector{d, d})));
    }
}

TEST(Nullspace, ParametricPivotsAreRecorded) {
    // e1.e1 = alpha e2 on its own: generic derivations, with alpha recorded as a pivot.
    using cpa::RatFunc;
    auto a = ct::tensor<RatFunc>(2, {{1, 1, 2, RatFunc::variable("alpha")}});
    auto p = ct::pair<RatFunc>("x", a, cpa::StructureTensor<RatFunc>(2));
    auto sys = cpa::build_system(Kind::Derivation, p);
    auto sp = cpa::nullspace(sys);
    EXPECT_EQ(sp.freedim(), 2u);
    for (const auto& v : sp.basis) EXPECT_TRUE(cpa::satisfies(sys, v));
    ASSERT_EQ(sp.exclusions.size(), 1u);
    EXPECT_EQ(sp.exclusions[0].to_string(), "alpha");
}
