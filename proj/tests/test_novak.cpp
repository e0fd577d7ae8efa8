#include <algorithm>
#include <random>

#include "doctest.h"
#include "ncforge/errors.hpp"
#include "ncforge/novak.hpp"
#include "oracles.hpp"

using namespace ncforge;

namespace {

bool witness_verifies(const NovakVerdict& v)
{
    if (!v.witness) return false;
    if (const auto* p = std::get_if<PrimeWitness>(&*v.witness))
        return v.n % p->prime == 0 && oracle::is_prime(p->prime) && v.n % (p->prime - 1) != 0;
    const auto a = std::get<BaseWitness>(*v.witness).base;
    return std::gcd(a, v.n) == 1 && pow_mod(a, v.n, v.n) != 1;
}

}  // namespace

TEST_SUITE("novak") {

TEST_CASE("criterion examples")
{
    const auto table = build_factor_table(3000);
    CHECK(is_nc_criterion(1, table).is_nc);
    const auto v561 = is_nc_criterion(561, table);
    CHECK_FALSE(v561.is_nc);
    CHECK(std::get<PrimeWitness>(*v561.witness).prime == 3);
    CHECK(is_nc_criterion(2520, table).is_nc);
    CHECK_THROWS_AS(is_nc_criterion(0, table), DomainError);
    CHECK_THROWS_AS(is_nc_criterion(3001, table), DomainError);
}

TEST_CASE("definition examples")
{
    CHECK(is_nc_definition(1).is_nc);
    CHECK(is_nc_definition(4).is_nc);
    const auto v3 = is_nc_definition(3);
    CHECK_FALSE(v3.is_nc);
    CHECK(std::get<BaseWitness>(*v3.witness).base == 2);
    CHECK_THROWS_AS(is_nc_definition(0), DomainError);
    CHECK_THROWS_AS(is_nc_definition(kDefinitionOracleLimit + 1), ResourceError);
}

TEST_CASE("carmichael lambda examples")
{
    const auto table = build_factor_table(3000);
    CHECK(carmichael_lambda(8, table) == 2);
    CHECK(carmichael_lambda(12, table) == 2);
    CHECK(carmichael_lambda(2520, table) == 12);
    CHECK(carmichael_lambda(1, table) == 1);
    CHECK(carmichael_lambda(2, table) == 1);
    CHECK(carmichael_lambda(4, table) == 2);
    CHECK(carmichael_lambda(561, table) == 80);
}

TEST_CASE("three deciders agree to 2000 and witnesses verify")
{
    const auto table = build_factor_table(2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        const auto crit = is_nc_criterion(n, table);
        const auto def = is_nc_definition(n);
        REQUIRE(crit.is_nc == def.is_nc);
        REQUIRE(crit.is_nc == (n % carmichael_lambda(n, table) == 0));
        REQUIRE(crit.is_nc == oracle::nc_by_trial(n));
        if (!crit.is_nc) {
            REQUIRE(witness_verifies(crit));
            REQUIRE(witness_verifies(def));
        }
    }
}

TEST_CASE("counts and lists")
{
    const auto table = build_factor_table(1000);
    CHECK(count_nc(10, table) == 5);
    CHECK(count_nc(100, table) == 23);
    CHECK(count_nc(2, table) == 2);
    CHECK(list_nc(20, table) == std::vector<std::uint64_t>{1, 2, 4, 6, 8, 12, 16, 18, 20});
    CHECK(list_nc(1, table) == std::vector<std::uint64_t>{1});
    const auto l50 = list_nc(50, table);
    CHECK(std::binary_search(l50.begin(), l50.end(), 42));
    CHECK_FALSE(std::binary_search(l50.begin(), l50.end(), 30));

    std::uint64_t prev = 0;
    for (std::uint64_t x = 1; x <= 1000; ++x) {
        const auto c = count_nc(x, table);
        REQUIRE(c >= prev);
        prev = c;
    }
    CHECK(list_nc(1000, table).size() == count_nc(1000, table));
}

TEST_CASE("segmented and monolithic paths agree")
{
    const auto table = build_factor_table(1'000'000);
    CHECK(count_nc_segmented(1'000'000) == count_nc(1'000'000, table));
    CHECK(list_nc_segmented(1'000'000, 4093) == list_nc(1'000'000, table));
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t x = 1 + rng() % 200000;
        const std::size_t seg = 1 + rng() % 20000;
        CHECK(count_nc_segmented(x, seg) == count_nc(x, table));
    }
    CHECK(count_nc_segmented(1) == 1);
    CHECK(count_nc_segmented(100) == 23);
    CHECK_THROWS_AS(count_nc_segmented(0), DomainError);
}

TEST_CASE("every member except 1 is even up to 1e6")
{
    const auto members = list_nc_segmented(1'000'000);
    CHECK(members.front() == 1);
    CHECK(std::all_of(members.begin() + 1, members.end(), [](std::uint64_t n) { return n % 2 == 0; }));
}

TEST_CASE("closure under multiplication by a prime divisor")
{
    const auto table = build_factor_table(10'000);
    const auto primes = sieve_primes(10'000);
    for (const std::uint64_t n : list_nc(10'000, table)) {
        if (n == 1) continue;
        for (const auto& [p, e] : factorize(n, table).factors) {
            REQUIRE(is_nc_criterion(n * p, primes).is_nc);
            REQUIRE(oracle::nc_by_trial(n * p));
        }
    }
}

TEST_CASE("verdict json")
{
    const auto table = build_factor_table(100);
    CHECK(to_json(is_nc_criterion(3, table)).dump() == R"({"n":3,"is_nc":false,"witness":{"prime":3}})");
    CHECK(to_json(is_nc_criterion(12, table)).dump() == R"({"n":12,"is_nc":true})");
    CHECK(to_json(is_nc_definition(3)).dump() == R"({"n":3,"is_nc":false,"witness":{"base":2}})");
}

}
