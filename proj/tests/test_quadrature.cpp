#include <doctest.h>

#include <cmath>

#include "qsx/common.hpp"
#include "qsx/quadrature.hpp"

#include "oracles.hpp"

using qsx::integrate;

TEST_CASE("integrates smooth functions to the requested tolerance") {
    CHECK(std::fabs(integrate([](double x) { return std::cos(x); }, 0.0, 1.0) -
                    std::sin(1.0)) <= 1e-12);
    CHECK(std::fabs(integrate([](double x) { return std::pow(x, 5); }, -1.0, 2.0) -
                    10.5) <= 1e-12);
    double gauss = integrate([](double x) { return std::exp(-8.0 * x * x); }, -1.0, 1.0);
    CHECK(std::fabs(gauss - oracles::gaussian4_sq_integral()) <= 1e-12);
}

TEST_CASE("empty interval integrates to zero") {
    CHECK(integrate([](double x) { return x; }, 0.3, 0.3) == 0.0);
}

TEST_CASE("handles mild endpoint steepness via bisection") {
    // sqrt has unbounded derivative at 0 but the integral exists.
    double v = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
    CHECK(std::fabs(v - 2.0 / 3.0) <= 1e-10);
}

TEST_CASE("non-integrable singularity exhausts the refinement depth") {
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0),
                    qsx::NumericError);
}
