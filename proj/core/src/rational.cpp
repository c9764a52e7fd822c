#include "yamabe/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

#include "yamabe/errors.hpp"

namespace yamabe {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den.is_zero()) {
        throw ConfigError("rational with zero denominator");
    }
    value_ = Backend(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) {
        throw ConfigError("rational division by zero");
    }
    return Rational(Rational::Backend(a.value_ / b.value_));
}

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) return false;
    BigInt value = 0;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
        value = value * 10 + (text[pos] - '0');
    }
    out = negative ? -value : value;
    return true;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    BigInt num;
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, num)) return std::nullopt;
        return Rational(num);
    }
    BigInt den;
    if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
    if (den.is_zero()) return std::nullopt;
    return Rational(num, den);
}

std::string Rational::str() const {
    std::string out = numerator().str();
    if (!is_integer()) {
        out += '/';
        out += denominator().str();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace yamabe
