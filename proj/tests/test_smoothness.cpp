#include <cmath>
#include <random>

#include "doctest.h"
#include "ncforge/errors.hpp"
#include "ncforge/smoothness.hpp"
#include "oracles.hpp"

using namespace ncforge;

TEST_SUITE("smoothness") {

TEST_CASE("greatest prime factor")
{
    const auto table = build_factor_table(100);
    CHECK(greatest_prime_factor(1, table) == 1);
    CHECK(greatest_prime_factor(96, table) == 3);
    CHECK(greatest_prime_factor(97, table) == 97);
    CHECK_THROWS_AS(greatest_prime_factor(0, table), DomainError);
    CHECK_THROWS_AS(greatest_prime_factor(101, table), DomainError);
}

TEST_CASE("psi examples")
{
    const auto table = build_factor_table(100);
    CHECK(oracle::psi(100, 5) == 34);
    CHECK(psi_count(100, 5, table) == 34);
    CHECK(psi_count(100, 100, table) == 100);
    CHECK(psi_count(100, 1, table) == 1);
    CHECK_THROWS_AS(psi_count(101, 5, table), DomainError);
    CHECK_THROWS_AS(psi_count(0, 5, table), DomainError);
}

TEST_CASE("psi agrees with brute force and the segmented sweep")
{
    const auto table = build_factor_table(20000);
    for (std::uint64_t x : {1, 2, 17, 500, 4096, 4097, 20000})
        for (std::uint64_t y : {1, 2, 3, 7, 50, 150, 20000}) {
            CAPTURE(x);
            CAPTURE(y);
            const auto expected = oracle::psi(x, y);
            CHECK(psi_count(x, y, table) == expected);
            CHECK(psi_count_segmented(x, y, 999) == expected);
        }
}

TEST_CASE("shifted smooth set examples")
{
    const auto primes = sieve_primes(100);
    const auto table = build_factor_table(100);
    const auto p10 = shifted_smooth_set(10, 3, primes, table);
    CHECK(p10.members == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(p10.count() == 4);
    CHECK(shifted_smooth_set(100, 10, primes, table).count() == 17);
    CHECK(oracle::pi_smooth(100, 10) == 17);
    CHECK(shifted_smooth_set(100, 97, primes, table).count() == 25);
    CHECK(shifted_smooth_set(100, 1, primes, table).members == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(shifted_smooth_set(101, 3, primes, table), DomainError);
    CHECK_THROWS_AS(shifted_smooth_set(1, 3, primes, table), DomainError);
}

TEST_CASE("shifted smooth counts agree across paths")
{
    const std::uint64_t limit = 30000;
    const auto primes = sieve_primes(limit);
    const auto table = build_factor_table(limit);
    for (std::uint64_t x : {2, 3, 10, 1000, 29999, 30000})
        for (std::uint64_t y : {1, 2, 5, 13, 100, 30000}) {
            CAPTURE(x);
            CAPTURE(y);
            const auto expected = oracle::pi_smooth(x, y);
            CHECK(shifted_smooth_set(x, y, primes, table).count() == expected);
            CHECK(pi_smooth_count(x, y, primes, table) == expected);
            CHECK(pi_smooth_count_segmented(x, y, 1234) == expected);
        }
}

TEST_CASE("monotone in x and y on a grid to 1e6")
{
    const std::uint64_t limit = 1'000'000;
    const auto primes = sieve_primes(limit);
    const auto table = build_factor_table(limit);
    const std::vector<std::uint64_t> xs{1000, 10000, 100000, 500000, 1000000};
    const std::vector<std::uint64_t> ys{2, 5, 20, 100, 1000};
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const auto psi = psi_count(xs[i], ys[j], table);
            const auto pis = pi_smooth_count(xs[i], ys[j], primes, table);
            if (i > 0) {
                CHECK(psi_count(xs[i - 1], ys[j], table) <= psi);
                CHECK(pi_smooth_count(xs[i - 1], ys[j], primes, table) <= pis);
            }
            if (j > 0) {
                CHECK(psi_count(xs[i], ys[j - 1], table) <= psi);
                CHECK(pi_smooth_count(xs[i], ys[j - 1], primes, table) <= pis);
            }
        }
}

TEST_CASE("vacuous smoothness bounds")
{
    const auto primes = sieve_primes(5000);
    const auto table = build_factor_table(5000);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t x = 2 + rng() % 4999;
        CHECK(psi_count(x, x + rng() % 10, table) == x);
        CHECK(pi_smooth_count(x, x - 1, primes, table) == primes.pi(x));
    }
}

TEST_CASE("y rules")
{
    CHECK(evaluate_y(FixedY{10}, 100) == 10);
    CHECK(evaluate_y(PowerY{0.5}, 10000) == 100);
    CHECK(evaluate_y(HildebrandY{}, 10000) == 21);
    CHECK(evaluate_y(HildebrandY{}, 100000) == 30);
    CHECK(evaluate_y(HildebrandY{}, 1000000) == 41);
    CHECK_THROWS_AS(evaluate_y(FixedY{0}, 100), DomainError);
    CHECK(std::holds_alternative<HildebrandY>(parse_y_rule("hild")));
    CHECK(std::get<FixedY>(parse_y_rule("fixed:7")).y == 7);
    CHECK(std::get<PowerY>(parse_y_rule("power:0.25")).u == 0.25);
    CHECK_THROWS_AS(parse_y_rule("fixed:-3"), DomainError);
    CHECK_THROWS_AS(parse_y_rule("power:x"), DomainError);
    CHECK_THROWS_AS(parse_y_rule("other"), DomainError);
}

TEST_CASE("conjecture table rows")
{
    const auto primes = sieve_primes(100);
    const auto table = build_factor_table(100);
    const auto row10 = conjecture_table({100}, FixedY{10}, primes, table).at(0);
    CHECK(row10.pi_count == 25);
    CHECK(row10.pi_smooth_count == 17);
    CHECK(row10.lhs_ratio == doctest::Approx(0.68).epsilon(1e-15));
    CHECK(conjecture_table({100}, FixedY{97}, primes, table).at(0).lhs_ratio == 1.0);
    const auto row5 = conjecture_table({100}, FixedY{5}, primes, table).at(0);
    CHECK(row5.psi_count == 34);
    CHECK(row5.rhs_ratio == doctest::Approx(0.34).epsilon(1e-15));
    CHECK_THROWS_AS(conjecture_table({}, FixedY{5}, primes, table), DomainError);
    CHECK_THROWS_AS(conjecture_table({200}, FixedY{5}, primes, table), DomainError);

    const auto rows = conjecture_table({100, 10, 50}, FixedY{5}, primes, table);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].z == 10);
    CHECK(rows[2].z == 100);
    for (const auto& r : rows) {
        CHECK(r.lhs_ratio > 0);
        CHECK(r.lhs_ratio <= 1);
        CHECK(r.rhs_ratio > 0);
        CHECK(r.rhs_ratio <= 1);
        CHECK(r.pi_smooth_count <= r.pi_count);
        CHECK(r.psi_count <= r.z);
    }
}

TEST_CASE("conjecture serialization")
{
    const auto primes = sieve_primes(100);
    const auto table = build_factor_table(100);
    const auto rows = conjecture_table({100}, FixedY{10}, primes, table);
    CHECK(oracle::psi(100, 10) == 46);
    CHECK(conjecture_csv(rows) == "z,y,pi,pi_smooth,psi,lhs_ratio,rhs_ratio\n100,10,25,17,46,0.68,0.46\n");
    const auto j = conjecture_json(rows);
    REQUIRE(j.size() == 1);
    for (const char* key : {"z", "y", "pi", "pi_smooth", "psi", "lhs_ratio", "rhs_ratio"}) CHECK(j[0].contains(key));
    CHECK(j[0]["lhs_ratio"].get<double>() == 0.68);
    CHECK(round_significant(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("hildebrand exponent is positive and approaches 1/2")
{
    const auto rows = hildebrand_report({10'000, 100'000, 1'000'000, 10'000'000});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].exponent > 0);
        CHECK(rows[i].psi_count == psi_count_segmented(rows[i].z, rows[i].y));
        if (i > 0) CHECK(std::fabs(rows[i].exponent - 0.5) < std::fabs(rows[i - 1].exponent - 0.5));
    }
    CHECK(rows[0].y == 21);
    CHECK(rows[0].psi_count == oracle::psi(10'000, 21));
}

}
