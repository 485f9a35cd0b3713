#pragma once

#include "cpa/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace cpa {

// Element of Frac(Q[params]). Numerator and denominator are coprime and the
// first denominator term (in MonomialOrder) has coefficient 1; a polynomial
// value therefore has denominator exactly 1.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc variable(const std::string& name) { return RatFunc(Poly::variable(name)); }

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    std::vector<std::string> variables() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }
    Rational constant_value() const;

    RatFunc inverse() const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    // Throws SpecializationError when the denominator vanishes at the point.
    Rational eval(const std::map<std::string, Rational>& point) const;
    // Substitutes the given parameters only; the rest stay symbolic.
    RatFunc specialize(const std::map<std::string, Rational>& point) const;
    RatFunc substitute(const std::map<std::string, RatFunc>& values) const;

    std::string to_string() const;

private:
    struct Canonical {};
    RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

inline RatFunc zero_like(const RatFunc&) { return RatFunc(); }
inline RatFunc one_like(const RatFunc&) { return RatFunc(1); }

}  // namespace cpa
