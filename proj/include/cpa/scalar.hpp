#pragma once

#include "cpa/fp.hpp"
#include "cpa/ratfunc.hpp"
#include "cpa/rational.hpp"

#include <string>
#include <variant>

namespace cpa {

// A scalar from one of the three supported fields. Mixing fields in a binary
// operation raises FieldMismatch.
using FieldScalar = std::variant<Rational, RatFunc, FpElem>;

FieldScalar add(const FieldScalar& a, const FieldScalar& b);
FieldScalar sub(const FieldScalar& a, const FieldScalar& b);
FieldScalar mul(const FieldScalar& a, const FieldScalar& b);
FieldScalar div(const FieldScalar& a, const FieldScalar& b);
bool is_zero(const FieldScalar& a);
bool eq(const FieldScalar& a, const FieldScalar& b);
std::string to_string(const FieldScalar& a);
const char* field_name(const FieldScalar& a);

}  // namespace cpa
