#include "maxmin/rational.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using maxmin::Rational;

TEST_CASE("rationals reduce to lowest terms with positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse and str round-trip") {
    CHECK(Rational::parse("2/3") == Rational(2, 3));
    CHECK(Rational::parse("-2/3") == Rational(-2, 3));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational(5, 2).str() == "5/2");
    CHECK(Rational(-1, 3).str() == "-1/3");
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
}

TEST_CASE("decimal rendering is informative and rounded") {
    CHECK(Rational(3, 5).decimal(6) == "0.600000");
    CHECK(Rational(1, 3).decimal(6) == "0.333333");
    CHECK(Rational(2, 3).decimal(6) == "0.666667");
    CHECK(Rational(-1, 8).decimal(3) == "-0.125");
    CHECK(Rational(14, 5).decimal(2) == "2.80");
}

TEST_CASE("arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a < Rational(1, 2));
    CHECK(maxmin::min(a, b) == b);
    CHECK(maxmin::abs(Rational(-7, 2)) == Rational(7, 2));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("random arithmetic identities") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        auto r = [&rng] {
            long num = static_cast<long>(rng() % 41) - 20;
            long den = static_cast<long>(rng() % 20) + 1;
            return Rational(num, den);
        };
        Rational a = r(), b = r(), c = r();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(Rational::parse((a - b).str()) == a - b);
        CHECK((a * b).den() > 0);
    }
}

TEST_CASE("power fractions") {
    CHECK(maxmin::rational_power_fraction(1, 4, 3) == Rational(1, 64));
    CHECK(maxmin::rational_power_fraction(1, 4, 0) == Rational(1));
    CHECK(Rational(1) - maxmin::rational_power_fraction(1, 4, 1) == Rational(3, 4));
}
