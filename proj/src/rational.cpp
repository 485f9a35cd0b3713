#include "cpa/rational.hpp"

#include "cpa/errors.hpp"

#include <cctype>
#include <functional>

namespace cpa {

Rational::Rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(const std::string& text) {
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto strip_plus = [](const std::string& s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(text)) throw Error("not a rational number: '" + text + "'");
        return Rational(mpz_class(strip_plus(text)));
    }
    std::string n = text.substr(0, slash), d = text.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d)) throw Error("not a rational number: '" + text + "'");
    mpz_class dz(strip_plus(d));
    if (dz == 0) throw DivisionByZero();
    return Rational(mpq_class(mpz_class(strip_plus(n)), dz));
}

Rational Rational::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1) / q_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
}

std::size_t Rational::hash() const {
    return std::hash<std::string>{}(q_.get_str());
}

}  // namespace cpa
