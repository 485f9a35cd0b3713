#include "cpa/expr.hpp"

#include "cpa/errors.hpp"

#include <cctype>

namespace cpa {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " in expression \"" + s_ + "\"", 1, static_cast<int>(pos_) + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc v = term();
        while (true) {
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }

    RatFunc term() {
        RatFunc v = unary();
        while (true) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RatFunc power() {
        RatFunc base = atom();
        if (!accept('^')) return base;
        skip();
        std::string digits = integer();
        if (digits.empty()) fail("expected a non-negative integer exponent");
        if (digits.size() > 4) fail("exponent too large");
        RatFunc r(1);
        for (int k = std::stoi(digits); k > 0; --k) r *= base;
        return r;
    }

    std::string integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    RatFunc atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(Rational(mpz_class(integer())));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            skip();
            if (pos_ < s_.size() && s_[pos_] == '(') {
                pos_ = start;
                fail("function call '" + name + "(' is not supported");
            }
            return RatFunc::variable(name);
        }
        if (accept('(')) {
            RatFunc v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expression(const std::string& text) {
    return Parser(text).parse();
}

}  // namespace cpa
