#pragma once

// The universal base D(s,r) = prod_{p <= r} p^{e_p}, e_p = max{k : p^k <= s},
// and the family E = D * prod(A) over subsets A of P(s,r). Every prime factor
// q of such an E has q - 1 | D, so E satisfies the prime-divisor criterion.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "ncforge/sieve.hpp"
#include "ncforge/smoothness.hpp"

namespace ncforge {

struct ConstructionBase {
    std::uint64_t s = 0;
    std::uint64_t r = 0;
    std::vector<PrimePower> exponents;  // every prime p <= r with p^e <= s < p^(e+1)
    mpz_class value;
    double log_value = 0;  // informational only
};

// Exponents come from exact integer comparisons. Needs 2 <= r <= s and primes.limit >= r.
ConstructionBase build_base(std::uint64_t s, std::uint64_t r, const PrimeTable& primes);

// Rebuilds D from an exponent vector.
mpz_class base_value(std::span<const PrimePower> exponents);

struct FamilyMember {
    std::reference_wrapper<const ConstructionBase> base;
    std::vector<std::uint64_t> subset;  // distinct primes of P(s,r), increasing
    mpz_class value;
};

// pset must be P(base.s, base.r); every subset element must be a member.
FamilyMember build_member(const ConstructionBase& base, std::vector<std::uint64_t> subset,
                          const ShiftedSmoothSet& pset);

// For each sampled subset: rebuild E, then for every prime q | E (primes of D
// plus the subset) factor q - 1 with `table`, check each prime power is <= s
// with prime <= r, and check q - 1 divides D exactly.
bool verify_lemma3(const ConstructionBase& base, const ShiftedSmoothSet& pset,
                   std::span<const std::vector<std::uint64_t>> sample, const FactorTable& table);

// Single-member form of the check above for an already built value.
bool member_satisfies_criterion(const ConstructionBase& base, std::span<const std::uint64_t> subset,
                                const mpz_class& value, const FactorTable& table);

nlohmann::ordered_json to_json(const FamilyMember& member);

}  // namespace ncforge
