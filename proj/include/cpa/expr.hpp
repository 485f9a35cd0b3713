#pragma once

#include "cpa/ratfunc.hpp"

#include <string>

namespace cpa {

// Parses integers, n/d, parameter names [a-zA-Z][a-zA-Z0-9_]*, + - * / ( )
// and x^k with a non-negative integer k. Errors carry the 1-based column.
RatFunc parse_expression(const std::string& text);

}  // namespace cpa
