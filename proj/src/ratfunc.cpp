#include "cpa/ratfunc.hpp"

#include "cpa/errors.hpp"

namespace cpa {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den.is_constant()) {
        num_ = num * den.constant_value().inverse();
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num, den);
    Poly n = g.is_constant() ? num : *exact_divide(num, g);
    Poly d = g.is_constant() ? den : *exact_divide(den, g);
    Rational scale = d.first_term().second.inverse();
    num_ = n * scale;
    den_ = d * scale;
    if (den_.is_constant()) den_ = Poly(1);
}

std::vector<std::string> RatFunc::variables() const {
    return merge_variables(num_.variables(), den_.variables());
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw Error("expression " + to_string() + " is not constant");
    return num_.constant_value();
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) return *this = RatFunc(num_ + o.num_, den_);
    // With one side polynomial the sum is already in lowest terms.
    if (den_.is_one()) return *this = RatFunc(num_ * o.den_ + o.num_, o.den_, Canonical{});
    if (o.den_.is_one()) return *this = RatFunc(num_ + o.num_ * den_, den_, Canonical{});
    return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
    return *this += -o;
}

RatFunc RatFunc::operator-() const {
    return RatFunc(-num_, den_, Canonical{});
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) return *this = RatFunc();
    if (den_.is_one() && o.den_.is_one()) {
        num_ *= o.num_;
        return *this;
    }
    if (o.is_constant()) {
        num_ *= o.num_.constant_value();
        return *this;
    }
    if (is_constant()) return *this = RatFunc(o.num_ * num_.constant_value(), o.den_, Canonical{});
    return *this = RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw DivisionByZero();
    if (o.is_constant()) {
        num_ *= o.num_.constant_value().inverse();
        return *this;
    }
    return *this = RatFunc(num_ * o.den_, den_ * o.num_);
}

Rational RatFunc::eval(const std::map<std::string, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d.is_zero()) throw SpecializationError(den_.to_string());
    return num_.eval(point) / d;
}

RatFunc RatFunc::specialize(const std::map<std::string, Rational>& point) const {
    std::map<std::string, Poly> values;
    for (const auto& [k, v] : point) values.emplace(k, Poly(v));
    Poly d = den_.substitute(values);
    if (d.is_zero()) throw SpecializationError(den_.to_string());
    return RatFunc(num_.substitute(values), d);
}

RatFunc RatFunc::substitute(const std::map<std::string, RatFunc>& values) const {
    auto apply = [&](const Poly& p) {
        RatFunc out;
        for (const auto& [e, c] : p.terms()) {
            RatFunc t(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                const auto& v = p.variables()[i];
                auto it = values.find(v);
                RatFunc base = it == values.end() ? RatFunc::variable(v) : it->second;
                for (std::uint32_t k = 0; k < e[i]; ++k) t *= base;
            }
            out += t;
        }
        return out;
    };
    RatFunc d = apply(den_);
    if (d.is_zero()) throw SpecializationError(den_.to_string());
    return apply(num_) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    std::string n = num_.to_string(), d = den_.to_string();
    if (num_.term_count() > 1) n = "(" + n + ")";
    if (den_.term_count() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace cpa
