#pragma once

// Membership tests and counts for numbers n with a^n = 1 (mod n) for every a
// coprime to n. Three independent deciders: the prime-divisor criterion
// ((p - 1) | n for every prime p | n), the defining congruence, and lambda(n) | n.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ncforge/sieve.hpp"

namespace ncforge {

// n = 1 counts as a member: both the congruence and the criterion hold vacuously.
inline constexpr bool kCountOne = true;

// Largest n accepted by the definitional oracle.
inline constexpr std::uint64_t kDefinitionOracleLimit = 10'000'000;

struct PrimeWitness {
    std::uint64_t prime;  // p | n and (p - 1) does not divide n
};

struct BaseWitness {
    std::uint64_t base;  // gcd(a, n) = 1 and a^n mod n != 1
};

struct NovakVerdict {
    std::uint64_t n = 0;
    bool is_nc = false;
    std::optional<std::variant<PrimeWitness, BaseWitness>> witness;
};

// Smallest failing prime as witness.
NovakVerdict is_nc_criterion(std::uint64_t n, const FactorTable& table);
NovakVerdict is_nc_criterion(std::uint64_t n, const PrimeTable& table);

// Brute force over every base; smallest failing base as witness. n <= 1e7.
NovakVerdict is_nc_definition(std::uint64_t n);

std::uint64_t carmichael_lambda(std::uint64_t n, const FactorTable& table);

std::uint64_t count_nc(std::uint64_t x, const FactorTable& table);
std::vector<std::uint64_t> list_nc(std::uint64_t x, const FactorTable& table);

// Segmented sweeps over [1, x]; no factor table, memory bounded by the segment.
std::uint64_t count_nc_segmented(std::uint64_t x, std::size_t segment_size = kDefaultSegmentSize);
std::vector<std::uint64_t> list_nc_segmented(std::uint64_t x, std::size_t segment_size = kDefaultSegmentSize);

// member[i] = 1 iff lo + i satisfies the criterion, for [lo, hi) with lo >= 1.
void nc_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base_primes,
                std::span<std::uint8_t> member);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

nlohmann::ordered_json to_json(const NovakVerdict& verdict);

}  // namespace ncforge
