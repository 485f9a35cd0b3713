#pragma once

#include "cpa/rational.hpp"

#include <cstdint>
#include <string>

namespace cpa {

bool is_prime(std::int64_t n);

// Element of F_p. A modulus of 0 marks an integer constant that has not yet
// met a field element (what FpElem(3) produces); it adopts the modulus of the
// first operand it is combined with.
class FpElem {
public:
    FpElem() = default;
    FpElem(long v) : value_(v), modulus_(0) {}
    FpElem(std::int64_t v, std::int64_t p);

    std::int64_t value() const { return value_; }
    std::int64_t modulus() const { return modulus_; }

    bool is_zero() const { return value_ == 0; }
    FpElem inverse() const;

    FpElem& operator+=(const FpElem& o);
    FpElem& operator-=(const FpElem& o);
    FpElem& operator*=(const FpElem& o);
    FpElem& operator/=(const FpElem& o);
    friend FpElem operator+(FpElem a, const FpElem& b) { return a += b; }
    friend FpElem operator-(FpElem a, const FpElem& b) { return a -= b; }
    friend FpElem operator*(FpElem a, const FpElem& b) { return a *= b; }
    friend FpElem operator/(FpElem a, const FpElem& b) { return a /= b; }
    FpElem operator-() const;

    friend bool operator==(const FpElem& a, const FpElem& b);

    std::string to_string() const { return std::to_string(value_); }

private:
    std::int64_t unify(const FpElem& o);

    std::int64_t value_ = 0;
    std::int64_t modulus_ = 0;
};

// Image of x under Z_(p) -> F_p; throws ReductionError if p divides the denominator.
FpElem reduce_mod_p(const Rational& x, std::int64_t p);

inline FpElem zero_like(const FpElem& x) { return FpElem(0, x.modulus() ? x.modulus() : 0); }
inline FpElem one_like(const FpElem& x) { return x.modulus() ? FpElem(1, x.modulus()) : FpElem(1); }

}  // namespace cpa
