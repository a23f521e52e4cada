#include <doctest.h>

#include <cmath>

#include "qsx/common.hpp"
#include "qsx/expression.hpp"

using qsx::Expression;
using qsx::ParseError;

TEST_CASE("literals, constants and functions evaluate") {
    CHECK(Expression::parse("1/sqrt(2)").evaluate(0.3) ==
          doctest::Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(Expression::parse("pi").evaluate(0.0) == doctest::Approx(M_PI));
    CHECK(Expression::parse("e").evaluate(0.0) == doctest::Approx(M_E));
    CHECK(Expression::parse("1e-3").evaluate(0.0) == doctest::Approx(0.001));
    CHECK(Expression::parse("sqrt((1+0.5*cos(pi*x))/2)").evaluate(0.0) ==
          doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
    CHECK(Expression::parse("exp(-4*x^2)").evaluate(0.5) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(Expression::parse("sin(x)+cos(x)").evaluate(1.2) ==
          doctest::Approx(std::sin(1.2) + std::cos(1.2)));
}

TEST_CASE("operator precedence and associativity") {
    CHECK(Expression::parse("2+3*4^2").evaluate(0.0) == doctest::Approx(50.0));
    CHECK(Expression::parse("2^3^2").evaluate(0.0) == doctest::Approx(512.0));
    CHECK(Expression::parse("-x^2").evaluate(2.0) == doctest::Approx(-4.0));
    CHECK(Expression::parse("2*-3").evaluate(0.0) == doctest::Approx(-6.0));
    CHECK(Expression::parse("2^-1").evaluate(0.0) == doctest::Approx(0.5));
    CHECK(Expression::parse("10-4-3").evaluate(0.0) == doctest::Approx(3.0));
    CHECK(Expression::parse("(1+x)*(1-x)").evaluate(0.5) == doctest::Approx(0.75));
}

TEST_CASE("syntax errors carry the offset and the expected token") {
    try {
        Expression::parse("x +");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
        CHECK(e.expected() == "operand");
    }

    try {
        Expression::parse("(1+x");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK(e.expected() == "')'");
    }

    CHECK_THROWS_AS(Expression::parse("foo(2)"), ParseError);
    CHECK_THROWS_AS(Expression::parse("1 2"), ParseError);
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
    CHECK_THROWS_AS(Expression::parse("sin x"), ParseError);
    CHECK_THROWS_AS(Expression::parse("*3"), ParseError);
}
