#include <cmath>

#include "doctest.h"
#include "ncforge/dickman.hpp"
#include "ncforge/errors.hpp"
#include "oracles.hpp"

using namespace ncforge;

TEST_SUITE("dickman") {

TEST_CASE("closed-form region")
{
    CHECK(dickman_rho(0.0) == 1.0);
    CHECK(dickman_rho(0.5) == 1.0);
    CHECK(dickman_rho(1.0) == 1.0);
    CHECK(std::fabs(dickman_rho(2.0) - (1.0 - std::log(2.0))) <= 1e-9);
    CHECK(std::fabs(dickman_rho(1.5) - (1.0 - std::log(1.5))) <= 1e-15);
}

TEST_CASE("rho(3) against the quadrature oracle")
{
    const double expected = oracle::rho3_quadrature();
    CHECK(std::fabs(expected - 0.0486084) <= 1e-7);
    CHECK(std::fabs(dickman_rho(3.0) - expected) <= 1e-9);
}

TEST_CASE("integer arguments against an independent trapezoid solver")
{
    for (int u : {3, 4, 5, 6, 8, 10, 15, 20}) {
        CAPTURE(u);
        const double expected = oracle::rho_trapezoid(u);
        CHECK(std::fabs(dickman_rho(u) - expected) <= 1e-9);
        // past u = 8 both solvers sit on a ~1e-16 absolute rounding floor, so only the absolute bound is meaningful
        if (u <= 8) CHECK(std::fabs(dickman_rho(u) - expected) <= 1e-6 * expected);
    }
}

TEST_CASE("bounded by 1/Gamma(u+1) at integers")
{
    for (int u = 2; u <= 10; ++u) {
        CAPTURE(u);
        CHECK(dickman_rho(u) <= 1.0 / std::tgamma(u + 1.0) + 1e-9);
    }
}

TEST_CASE("positive, strictly decreasing and continuous past 1")
{
    double prev = dickman_rho(1.0);
    for (double u = 1.01; u <= 20.0; u += 0.01) {
        const double v = dickman_rho(u);
        REQUIRE(v > 0);
        REQUIRE(v < prev);
        prev = v;
    }
    for (double k = 2; k <= 10; ++k) {
        CHECK(std::fabs(dickman_rho(k - 1e-9) - dickman_rho(k + 1e-9)) < 1e-8);
    }
}

TEST_CASE("delay equation holds between grid nodes")
{
    for (double u : {2.3, 3.7, 5.123, 9.9}) {
        const double h = 1e-4;
        const double derivative = (dickman_rho(u + h) - dickman_rho(u - h)) / (2 * h);
        CHECK(std::fabs(u * derivative + dickman_rho(u - 1)) < 1e-7);
    }
}

TEST_CASE("domain edges")
{
    CHECK_THROWS_AS(dickman_rho(-0.1), DomainError);
    CHECK_THROWS_AS(dickman_rho(std::nan("")), DomainError);
    CHECK(dickman_rho(600.0) == 0.0);
}

}
