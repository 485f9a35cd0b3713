#pragma once

#include "cpa/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cpa {

using Exponents = std::vector<std::uint32_t>;

// Graded order: lower total degree first; within a degree, monomials that are
// heavier in earlier variables come first (so "1+a+b+a^2+a*b+b^2").
struct MonomialOrder {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

std::uint32_t total_degree(const Exponents& e);

// Multivariate polynomial over Q. Variables are kept sorted by name and only
// variables that actually occur are stored, so equal polynomials have equal
// representations regardless of how they were built.
class Poly {
public:
    using TermMap = std::map<Exponents, Rational, MonomialOrder>;

    Poly() = default;
    Poly(long c) : Poly(Rational(c)) {}
    Poly(const Rational& c);

    static Poly variable(const std::string& name);
    // Builds from an arbitrary variable list (need not be sorted or minimal).
    static Poly from_terms(std::vector<std::string> vars, const std::vector<std::pair<Exponents, Rational>>& terms);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // Value of a constant polynomial (throws if not constant).
    Rational constant_value() const;
    Rational constant_term() const;
    std::uint32_t total_degree() const;
    std::uint32_t degree_in(const std::string& var) const;
    bool contains(const std::string& var) const;

    const std::pair<const Exponents, Rational>& leading_term() const { return *terms_.rbegin(); }
    const std::pair<const Exponents, Rational>& first_term() const { return *terms_.begin(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;
    Poly pow(unsigned k) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

    // Scaled so that the first term (in MonomialOrder) has coefficient 1.
    Poly normalized() const;

    Rational eval(const std::map<std::string, Rational>& point) const;
    Poly substitute(const std::map<std::string, Poly>& values) const;

    // Coefficients of this polynomial viewed as univariate in `var`.
    std::map<std::uint32_t, Poly> coefficients_in(const std::string& var) const;

    std::string to_string() const;

    // Same polynomial expressed over a superset of its variables.
    TermMap terms_over(const std::vector<std::string>& vars) const;

private:
    void canonicalize();

    std::vector<std::string> vars_;
    TermMap terms_;
};

std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Quotient when b divides a exactly, nullopt otherwise. b must be nonzero.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

// Greatest common divisor, normalized; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace cpa
