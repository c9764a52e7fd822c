#include <doctest.h>

#include <random>

#include "yamabe/errors.hpp"
#include "yamabe/rational.hpp"

using yamabe::BigInt;
using yamabe::Rational;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
    const Rational r(BigInt(6), BigInt(-8));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 4);
    CHECK(Rational(BigInt(0), BigInt(7)).denominator() == 1);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), yamabe::ConfigError);
}

TEST_CASE("arithmetic is exact") {
    const Rational third(BigInt(1), BigInt(3));
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(2) / Rational(3) - Rational(2, 3) == Rational(0));
    CHECK(Rational(1, 10) * Rational(10) == Rational(1));
    CHECK(-Rational(5, 7) + Rational(5, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1) / Rational(0), yamabe::ConfigError);
}

TEST_CASE("comparisons and signs") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(-2, 4).sign() == -1);
    CHECK(Rational(0).sign() == 0);
    CHECK(Rational(7, 2).abs() == Rational(7, 2));
    CHECK(Rational(-7, 2).abs() == Rational(7, 2));
}

TEST_CASE("parse accepts p and p/q, rejects junk") {
    CHECK(*Rational::parse("5") == Rational(5));
    CHECK(*Rational::parse("-5") == Rational(-5));
    CHECK(*Rational::parse("2/3") == Rational(2, 3));
    CHECK(*Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(!Rational::parse("").has_value());
    CHECK(!Rational::parse("1/0").has_value());
    CHECK(!Rational::parse("1.5").has_value());
    CHECK(!Rational::parse("a/b").has_value());
    CHECK(!Rational::parse("1/").has_value());
}

TEST_CASE("str renders canonically and round-trips") {
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(-3, 9).str() == "-1/3");

    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long long> num(-5000, 5000);
    std::uniform_int_distribution<long long> den(1, 5000);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational r(BigInt(num(rng)), BigInt(den(rng)));
        const auto back = Rational::parse(r.str());
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
}

TEST_CASE("no precision loss at scales beyond 64-bit") {
    Rational big(1);
    for (int k = 0; k < 40; ++k) big *= Rational(1000000007);
    const Rational tiny = Rational(1) / big;
    CHECK(big * tiny == Rational(1));
    CHECK((big + Rational(1)) - big == Rational(1));
}
