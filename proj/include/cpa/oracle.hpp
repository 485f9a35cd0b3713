#pragma once

#include "cpa/algebra.hpp"
#include "cpa/fp.hpp"
#include "cpa/kinds.hpp"
#include "cpa/rational.hpp"

#include <cstdint>
#include <vector>

namespace cpa {

struct OracleResult {
    // Each solution is an n x n map over F_q in the unknown layout
    // (index in*n + out holds coordinate `out` of M(e_in)); sorted lexicographically.
    std::vector<std::vector<std::int64_t>> solutions;
    std::size_t count() const { return solutions.size(); }
    std::uint64_t nodes = 0;
};

constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// Exhaustive search over all n x n matrices mod q, assigning entries one at a
// time and discarding a branch as soon as a fully determined equation fails.
// Kinds: derivation, centroid, quasi-centroid, rota-baxter, nijenhuis,
// averaging, reynolds, automorphism (invertible solutions only). Nonlinear
// kinds require q^(n^2) <= guard; every kind stops with GuardExceeded after
// `guard` search nodes. Throws ReductionError if a constant does not reduce.
OracleResult exhaustive_solutions_mod_p(Kind kind, const AlgebraPair<Rational>& p, std::int64_t q,
                                        std::uint64_t guard = kEnumerationGuard);

Matrix<FpElem> oracle_matrix(const std::vector<std::int64_t>& sol, std::size_t n, std::int64_t q);

}  // namespace cpa
