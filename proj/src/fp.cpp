#include "cpa/fp.hpp"

#include "cpa/errors.hpp"

#include <tuple>
#include <utility>

namespace cpa {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::int64_t mod(std::int64_t v, std::int64_t p) {
    if (!p) return v;
    v %= p;
    return v < 0 ? v + p : v;
}

}  // namespace

FpElem::FpElem(std::int64_t v, std::int64_t p) : value_(mod(v, p)), modulus_(p) {
    if (p != 0 && !is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
}

std::int64_t FpElem::unify(const FpElem& o) {
    if (modulus_ == o.modulus_) return modulus_;
    if (!modulus_) {
        modulus_ = o.modulus_;
        value_ = mod(value_, modulus_);
        return modulus_;
    }
    if (!o.modulus_) return modulus_;
    throw FieldMismatch("F_" + std::to_string(modulus_) + " and F_" + std::to_string(o.modulus_));
}

FpElem& FpElem::operator+=(const FpElem& o) {
    auto p = unify(o);
    value_ = mod(value_ + mod(o.value_, p), p);
    return *this;
}

FpElem& FpElem::operator-=(const FpElem& o) {
    auto p = unify(o);
    value_ = mod(value_ - mod(o.value_, p), p);
    return *this;
}

FpElem& FpElem::operator*=(const FpElem& o) {
    auto p = unify(o);
    value_ = mod(value_ * mod(o.value_, p), p);
    return *this;
}

FpElem& FpElem::operator/=(const FpElem& o) {
    FpElem b = o;
    b.unify(*this);
    return *this *= b.inverse();
}

FpElem FpElem::operator-() const {
    FpElem r = *this;
    r.value_ = mod(-value_, modulus_);
    return r;
}

FpElem FpElem::inverse() const {
    if (value_ == 0) throw DivisionByZero();
    if (!modulus_) {
        if (value_ == 1 || value_ == -1) return *this;
        throw Error("inverse of an integer constant outside a prime field");
    }
    std::int64_t a = value_, m = modulus_, x0 = 1, x1 = 0;
    while (m) {
        std::int64_t q = a / m;
        std::tie(a, m) = std::pair{m, a - q * m};
        std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
    }
    return FpElem(x0, modulus_);
}

bool operator==(const FpElem& a, const FpElem& b) {
    if (a.modulus_ && b.modulus_ && a.modulus_ != b.modulus_)
        throw FieldMismatch("F_" + std::to_string(a.modulus_) + " and F_" + std::to_string(b.modulus_));
    std::int64_t p = a.modulus_ ? a.modulus_ : b.modulus_;
    return mod(a.value_, p) == mod(b.value_, p);
}

FpElem reduce_mod_p(const Rational& x, std::int64_t p) {
    if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    mpz_class pz(static_cast<long>(p));
    mpz_class den = x.denominator() % pz;
    if (den == 0) throw ReductionError(std::to_string(p) + " divides the denominator of " + x.to_string());
    mpz_class num = x.numerator() % pz;
    FpElem n(num.get_si(), p), d(den.get_si(), p);
    return n / d;
}

}  // namespace cpa
