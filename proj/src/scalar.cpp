#include "cpa/scalar.hpp"

#include "cpa/errors.hpp"

namespace cpa {

namespace {

template <class Op>
FieldScalar binary(const FieldScalar& a, const FieldScalar& b, Op op) {
    if (a.index() != b.index())
        throw FieldMismatch(std::string("operands from ") + field_name(a) + " and " + field_name(b));
    return std::visit(
        [&](const auto& x) -> FieldScalar {
            using T = std::decay_t<decltype(x)>;
            return op(x, std::get<T>(b));
        },
        a);
}

}  // namespace

FieldScalar add(const FieldScalar& a, const FieldScalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}

FieldScalar sub(const FieldScalar& a, const FieldScalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x - y; });
}

FieldScalar mul(const FieldScalar& a, const FieldScalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}

FieldScalar div(const FieldScalar& a, const FieldScalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x / y; });
}

bool is_zero(const FieldScalar& a) {
    return std::visit([](const auto& x) { return x.is_zero(); }, a);
}

bool eq(const FieldScalar& a, const FieldScalar& b) {
    if (a.index() != b.index())
        throw FieldMismatch(std::string("operands from ") + field_name(a) + " and " + field_name(b));
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return x == std::get<T>(b);
        },
        a);
}

std::string to_string(const FieldScalar& a) {
    return std::visit([](const auto& x) { return x.to_string(); }, a);
}

const char* field_name(const FieldScalar& a) {
    switch (a.index()) {
    case 0: return "Q";
    case 1: return "Q(params)";
    default: return "F_p";
    }
}

}  // namespace cpa
