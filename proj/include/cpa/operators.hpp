#pragma once

#include "cpa/algebra.hpp"
#include "cpa/kinds.hpp"
#include "cpa/linear.hpp"
#include "cpa/ratfunc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpa {

// Candidate operator family: entries are expressions in free parameters
// (and possibly the pair's own parameters); exclusions must not vanish.
struct ParamMatrix {
    Matrix<RatFunc> m;
    std::vector<Poly> exclusions;
};

enum class Verdict { Zero, Nonzero, Conditional };
std::string verdict_name(Verdict v);

struct ResidualSet {
    Kind kind = Kind::RotaBaxter;
    std::vector<RatFunc> residuals;
    Verdict verdict = Verdict::Zero;
    // First residual that cannot vanish for any value of the family parameters.
    std::optional<std::size_t> witness;
    // Distinct normalized numerators of the nonzero residuals.
    std::vector<Poly> constraints;
};

// Number of residual families per product: 2 for averaging, 1 otherwise.
std::size_t family_count(Kind k);

// Index (product, family, i, j, q) -> flat position.
std::size_t operator_residual_index(Kind k, std::size_t n, int product, std::size_t family, std::size_t i, std::size_t j,
                                    std::size_t q);

// Rota-Baxter:  R(a)R(b) - R(R(a)b + aR(b))
// Nijenhuis:    N(a)N(b) - N(N(a)b + aN(b) - N(ab))
// averaging:    X(X(a)b) - X(a)X(b)  and  X(a)X(b) - X(aX(b))
// Reynolds:     Y(ab) - Y(Y(a)b + aY(b) - Y(a)Y(b))
// for both products and all basis pairs; the matrix acts with column j = M(e_j).
ResidualSet operator_residuals(Kind kind, const AlgebraPair<RatFunc>& p, const Matrix<RatFunc>& M);

struct FamilyReport {
    ResidualSet residuals;
    // Automorphism only.
    std::optional<RatFunc> determinant;
    bool det_is_unit = false;
    // Part of det's numerator not accounted for by the exclusions.
    std::optional<Poly> det_remainder;
    Verdict verdict = Verdict::Zero;
};

// Linear kinds use the build_system rows applied to vec(M); automorphism uses
// pair_hom_residuals(M, p, p) and additionally requires det(M) to be a unit
// given the family's and the pair's exclusions.
FamilyReport verify_family(Kind kind, const AlgebraPair<RatFunc>& p, const ParamMatrix& M);

// Parameters of M that are not parameters of the pair.
std::vector<std::string> family_parameters(const AlgebraPair<RatFunc>& p, const Matrix<RatFunc>& M);

// Classifies nonzero residuals into ZERO / NONZERO / CONDITIONAL.
void classify(ResidualSet& rs, const std::vector<std::string>& family_params);

struct AffineSolution {
    std::vector<std::string> params;
    // Particular solution (parameter values) and kernel directions, both in
    // parameter coordinates.
    std::vector<RatFunc> offset;
    std::vector<std::vector<RatFunc>> directions;
};

struct AnsatzResult {
    std::vector<Poly> constraints;
    bool linear = false;
    bool consistent = true;
    std::optional<AffineSolution> solution;
};

AnsatzResult ansatz_constraints(Kind kind, const AlgebraPair<RatFunc>& p, const ParamMatrix& pattern);

// Pattern with parameter values substituted.
Matrix<RatFunc> instantiate(const Matrix<RatFunc>& pattern, const std::vector<std::string>& params,
                            const std::vector<RatFunc>& values);

}  // namespace cpa
