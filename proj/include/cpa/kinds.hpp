#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cpa {

enum class Kind {
    Derivation,
    Centroid,
    QuasiCentroid,
    QuasiDerivation,
    GeneralizedDerivation,
    RotaBaxter,
    Nijenhuis,
    Averaging,
    Reynolds,
    Automorphism,
};

std::string kind_name(Kind k);
std::optional<Kind> parse_kind(const std::string& s);

// Kinds whose defining identities are linear in the operator.
bool is_linear(Kind k);
// Number of n x n unknown matrices (1, or 2/3 for quasi- and generalized derivations).
std::size_t slot_count(Kind k);

const std::vector<Kind>& linear_kinds();
const std::vector<Kind>& operator_kinds();

}  // namespace cpa
