#pragma once

#include "cpa/poly.hpp"
#include "cpa/ratfunc.hpp"
#include "cpa/rational.hpp"

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace cpa {

inline void PrintTo(const Rational& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const Poly& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const RatFunc& x, std::ostream* os) { *os << x.to_string(); }

}  // namespace cpa

namespace cpa::testing {

// Seed for randomized tests; set with --seed=N or CPA_SEED.
std::uint64_t seed();

inline Rational random_rational(std::mt19937_64& rng, long span = 9) {
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    return Rational(num(rng), den(rng));
}

inline Poly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int terms = 3, unsigned max_deg = 2) {
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::vector<std::pair<Exponents, Rational>> ts;
    for (int t = 0; t < terms; ++t) {
        Exponents e;
        for (std::size_t i = 0; i < vars.size(); ++i) e.push_back(deg(rng));
        ts.emplace_back(e, random_rational(rng, 5));
    }
    return Poly::from_terms(vars, ts);
}

}  // namespace cpa::testing

#include "cpa/algebra.hpp"

#include <tuple>

namespace cpa::testing {

// Entries (i, j, k, c) with 1-based indices: e_i e_j gets c e_k.
template <class F = Rational>
StructureTensor<F> tensor(std::size_t n, const std::vector<std::tuple<int, int, int, F>>& entries) {
    StructureTensor<F> t(n);
    for (const auto& [i, j, k, c] : entries) t(i - 1, j - 1, k - 1) = c;
    return t;
}

template <class F = Rational>
AlgebraPair<F> pair(std::string name, const StructureTensor<F>& bullet, const StructureTensor<F>& star) {
    AlgebraPair<F> p;
    p.name = std::move(name);
    p.dim = bullet.dim();
    p.bullet = bullet;
    p.star = star;
    return p;
}

// e1.e1 = e2 and e1*e1 = e1, e1*e2 = e2, e2*e1 = e2.
inline AlgebraPair<Rational> a21_a24() {
    return pair<Rational>("A2_01-A2_04", tensor<Rational>(2, {{1, 1, 2, Rational(1)}}),
                          tensor<Rational>(2, {{1, 1, 1, Rational(1)}, {1, 2, 2, Rational(1)}, {2, 1, 2, Rational(1)}}));
}

}  // namespace cpa::testing
