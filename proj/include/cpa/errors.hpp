#pragma once

#include <stdexcept>
#include <string>

namespace cpa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct FieldMismatch : Error {
    using Error::Error;
};

// A substitution made a denominator vanish; `polynomial` is the offending one.
struct SpecializationError : Error {
    std::string polynomial;
    explicit SpecializationError(std::string poly)
        : Error("denominator " + poly + " vanishes at the given point"), polynomial(std::move(poly)) {}
};

struct ReductionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : Error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

struct GuardExceeded : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

}  // namespace cpa
