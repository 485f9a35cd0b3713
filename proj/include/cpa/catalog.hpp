#pragma once

#include "cpa/algebra.hpp"
#include "cpa/kinds.hpp"
#include "cpa/operators.hpp"
#include "cpa/ratfunc.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cpa {

using Pair = AlgebraPair<RatFunc>;

// One-document JSON pair file: name, dim, params[], exclusions[] and
// bullet[] / star[] as arrays of {i, j, k, c} with c a scalar expression.
Pair parse_algebra(const std::string& text);
std::string serialize(const Pair& p);

struct ExpectedFamily {
    std::string label;
    // Entries as printed (row r, column c), before parsing.
    std::vector<std::vector<std::string>> text;
    ParamMatrix matrix;
    // Set when an entry contains sqrt(...); `matrix` then holds the family with
    // each radical replaced by a fresh parameter.
    bool radical = false;
    std::vector<std::string> radical_symbols;
};

struct ExpectedInvariant {
    std::string label;
    // Kinds the printed table is checked as (two for the swapped averaging/Reynolds tables).
    std::vector<Kind> kinds;
    std::vector<Matrix<RatFunc>> slots;
};

struct CatalogEntry {
    Pair pair;
    std::string display;
    std::string provenance;
    std::vector<std::string> notes;
    std::vector<ExpectedFamily> automorphisms;
    std::vector<ExpectedInvariant> invariants;
};

// CPA_CATALOG_DIR if set, else the directory configured at build time.
std::string default_catalog_dir();
std::vector<CatalogEntry> load_catalog(const std::string& dir);
std::vector<CatalogEntry> load_builtin_catalog();
std::string read_file(const std::string& path);

struct CheckRecord {
    std::string name;
    std::string verdict;
    nlohmann::json details;
};

struct EntryReport {
    std::string entry;
    std::vector<CheckRecord> checks;
};

// Values every parametric entry is specialized at (exclusions permitting).
const std::vector<long>& specialization_values();

// The pair with every parameter set to v, or nullopt when v is excluded or
// makes a structure constant's denominator vanish.
std::optional<AlgebraPair<Rational>> specialize_pair(const Pair& p, long v);
std::optional<AlgebraPair<Rational>> to_rational(const Pair& p);

struct SpanComparison {
    std::string verdict;  // MATCH, MATCH-TRANSPOSED or MISMATCH
    std::size_t printed_dim = 0;
    std::size_t computed_dim = 0;
    std::size_t common_dim = 0;
    // Vanish iff the printed family lies in the computed space (polynomials in
    // the printed symbols), resp. the computed space lies in the printed span
    // (polynomials in fresh t-parameters of the computed basis).
    std::vector<Poly> printed_outside;
    std::vector<Poly> computed_outside;
};

// Compares span of the monomial coefficient matrices of `printed` with the
// span of `computed` (vectors in the unknown layout of `slots` maps).
SpanComparison compare_spans(const std::vector<Matrix<RatFunc>>& printed, const std::vector<std::vector<RatFunc>>& computed,
                             std::size_t n, const std::vector<std::string>& pair_params);

EntryReport verify_entry(const CatalogEntry& e);

}  // namespace cpa
