#include <random>

#include "doctest.h"
#include "ncforge/errors.hpp"
#include "ncforge/sieve.hpp"
#include "oracles.hpp"

using namespace ncforge;

TEST_SUITE("sieve") {

TEST_CASE("sieve_primes small limits")
{
    const auto t10 = sieve_primes(10);
    CHECK(t10.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t10.count() == 4);
    const auto t2 = sieve_primes(2);
    CHECK(t2.primes == std::vector<std::uint64_t>{2});
    CHECK(sieve_primes(100).count() == 25);
}

TEST_CASE("prime count matches trial division up to 1e5")
{
    const auto table = sieve_primes(100000, SieveOptions{4096});
    std::uint64_t expected = 0;
    std::size_t idx = 0;
    for (std::uint64_t n = 2; n <= 100000; ++n) {
        if (!oracle::is_prime(n)) continue;
        ++expected;
        REQUIRE(table.primes[idx++] == n);
    }
    CHECK(table.count() == expected);
    CHECK(table.pi(100) == 25);
    CHECK(count_primes(100000, 777) == expected);
}

TEST_CASE("segmented output is independent of segment size")
{
    const auto reference = sieve_primes_monolithic(10'000'000);
    CHECK(reference.count() == 664579);
    CHECK(sieve_primes(10'000'000).primes == reference.primes);
    CHECK(sieve_primes(10'000'000, SieveOptions{100'003}).primes == reference.primes);
    CHECK(count_primes(10'000'000, 65536) == reference.count());

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t limit = 2 + rng() % 50000;
        const std::size_t seg = 1 + rng() % 3000;
        CHECK(sieve_primes(limit, SieveOptions{seg}).primes == sieve_primes_monolithic(limit).primes);
    }
}

TEST_CASE("limit errors")
{
    CHECK_THROWS_AS(sieve_primes(1), DomainError);
    CHECK_THROWS_AS(sieve_primes(0), DomainError);
    CHECK_THROWS_AS(sieve_primes((1ull << 40) + 1), ResourceError);
    CHECK_THROWS_AS(build_factor_table(1), DomainError);
    CHECK_THROWS_AS(build_factor_table(1'000'000, MemoryBudget{1024}), ResourceError);
    CHECK_THROWS_AS(sieve_primes(1'000'000, SieveOptions{kDefaultSegmentSize, MemoryBudget{64}}), ResourceError);
}

TEST_CASE("factor table spot values")
{
    const auto t12 = build_factor_table(12);
    CHECK(t12.spf(12) == 2);
    CHECK(t12.spf(9) == 3);
    CHECK(t12.spf(11) == 11);
    CHECK(build_factor_table(100).spf(91) == 7);
    CHECK(build_factor_table(2).spf(2) == 2);
    CHECK_THROWS_AS(t12.spf(13), DomainError);
    CHECK_THROWS_AS(t12.spf(1), DomainError);
}

TEST_CASE("factorize examples")
{
    const auto table = build_factor_table(3000);
    CHECK(factorize(12, table).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(2520, table).factors == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}, {7, 1}});
    CHECK(factorize(97, table).factors == std::vector<PrimePower>{{97, 1}});
    CHECK_THROWS_AS(factorize(3001, table), DomainError);
    CHECK_THROWS_AS(factorize(1, table), DomainError);
}

TEST_CASE("factor table invariants hold exhaustively to 1e6")
{
    const std::uint64_t limit = 1'000'000;
    const auto table = build_factor_table(limit);
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const auto f = factorize(n, table);
        REQUIRE(f.product() == n);
        for (std::size_t i = 1; i < f.factors.size(); ++i) REQUIRE(f.factors[i - 1].prime < f.factors[i].prime);
        const std::uint64_t p = table.spf(n);
        REQUIRE(n % p == 0);
        REQUIRE(p == f.factors.front().prime);
        REQUIRE(table.spf(p) == p);
    }
}

TEST_CASE("trial division over a prime table agrees with the factor table")
{
    const auto table = build_factor_table(2'000'000);
    const auto primes = sieve_primes(1500);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t n = 2 + rng() % (2'000'000 - 1);
        REQUIRE(factorize(n, primes).factors == factorize(n, table).factors);
    }
    CHECK_THROWS_AS(factorize(1500ull * 1500 * 4, primes), DomainError);
}

TEST_CASE("segment gpf sweep matches trial division")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const std::uint64_t lo = 1 + rng() % 1'000'000;
        const std::uint64_t hi = lo + 1 + rng() % 5000;
        const auto base = base_primes_for(hi - 1);
        std::vector<std::uint64_t> out(hi - lo);
        segment_greatest_prime_factors(lo, hi, base, out);
        for (std::uint64_t n = lo; n < hi; ++n) REQUIRE(out[n - lo] == oracle::gpf(n));
    }
}

}
