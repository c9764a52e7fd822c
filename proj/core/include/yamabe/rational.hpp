#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace yamabe {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always in lowest terms with positive denominator;
/// every operation is exact. All eigenvalues, curvatures, instants and sigma
/// values in the exact pipeline live in this type — no floating point leaks in.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long long n) : value_(n) {}  // NOLINT: implicit by design
    Rational(const BigInt& n) : value_(n) {}
    Rational(const BigInt& num, const BigInt& den);

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    int sign() const { return value_.sign(); }
    bool is_zero() const { return value_.is_zero(); }
    bool is_integer() const { return denominator() == 1; }
    Rational abs() const { return value_ < 0 ? Rational(-value_) : *this; }

    /// Accepts "p" or "p/q" with optional sign; nullopt on malformed input.
    static std::optional<Rational> parse(std::string_view text);

    /// Canonical rendering: "p" when the denominator is 1, else "p/q".
    std::string str() const;

    double to_double() const { return value_.convert_to<double>(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-value_); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

private:
    using Backend = boost::multiprecision::cpp_rational;
    explicit Rational(Backend v) : value_(std::move(v)) {}

    Backend value_;  // canonical form maintained by the backend
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace yamabe
