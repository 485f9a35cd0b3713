#include "cpa/kinds.hpp"

#include <array>
#include <utility>

namespace cpa {

namespace {

constexpr std::array<std::pair<Kind, const char*>, 10> kNames{{
    {Kind::Derivation, "derivation"},
    {Kind::Centroid, "centroid"},
    {Kind::QuasiCentroid, "quasi-centroid"},
    {Kind::QuasiDerivation, "quasi-derivation"},
    {Kind::GeneralizedDerivation, "generalized-derivation"},
    {Kind::RotaBaxter, "rota-baxter"},
    {Kind::Nijenhuis, "nijenhuis"},
    {Kind::Averaging, "averaging"},
    {Kind::Reynolds, "reynolds"},
    {Kind::Automorphism, "automorphism"},
}};

}  // namespace

std::string kind_name(Kind k) {
    for (const auto& [kind, name] : kNames)
        if (kind == k) return name;
    return "unknown";
}

std::optional<Kind> parse_kind(const std::string& s) {
    for (const auto& [kind, name] : kNames)
        if (s == name) return kind;
    return std::nullopt;
}

bool is_linear(Kind k) {
    switch (k) {
    case Kind::Derivation:
    case Kind::Centroid:
    case Kind::QuasiCentroid:
    case Kind::QuasiDerivation:
    case Kind::GeneralizedDerivation: return true;
    default: return false;
    }
}

std::size_t slot_count(Kind k) {
    if (k == Kind::QuasiDerivation) return 2;
    if (k == Kind::GeneralizedDerivation) return 3;
    return 1;
}

const std::vector<Kind>& linear_kinds() {
    static const std::vector<Kind> ks{Kind::Derivation, Kind::Centroid, Kind::QuasiCentroid, Kind::QuasiDerivation,
                                      Kind::GeneralizedDerivation};
    return ks;
}

const std::vector<Kind>& operator_kinds() {
    static const std::vector<Kind> ks{Kind::RotaBaxter, Kind::Nijenhuis, Kind::Averaging, Kind::Reynolds};
    return ks;
}

}  // namespace cpa
