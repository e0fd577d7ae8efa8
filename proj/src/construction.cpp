#include "ncforge/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncforge/errors.hpp"

namespace ncforge {

ConstructionBase build_base(std::uint64_t s, std::uint64_t r, const PrimeTable& primes)
{
    if (r < 2 || r > s)
        throw DomainError("base needs 2 <= r <= s, got r = " + std::to_string(r) + ", s = " + std::to_string(s));
    if (primes.limit < r) throw DomainError("prime table does not reach r = " + std::to_string(r));

    ConstructionBase base{s, r, {}, 1, 0.0};
    for (const std::uint64_t p : primes.primes) {
        if (p > r) break;
        unsigned e = 0;
        for (std::uint64_t power = 1; power <= s / p; power *= p) ++e;
        base.exponents.push_back({p, e});
        base.log_value += double(e) * std::log(double(p));
    }
    base.value = base_value(base.exponents);
    return base;
}

mpz_class base_value(std::span<const PrimePower> exponents)
{
    mpz_class value = 1, term;
    for (const auto& [p, e] : exponents) {
        mpz_ui_pow_ui(term.get_mpz_t(), p, e);
        value *= term;
    }
    return value;
}

FamilyMember build_member(const ConstructionBase& base, std::vector<std::uint64_t> subset,
                          const ShiftedSmoothSet& pset)
{
    if (pset.x != base.s || pset.y != base.r)
        throw DomainError("shifted prime set P(" + std::to_string(pset.x) + "," + std::to_string(pset.y) +
                          ") does not match base (s = " + std::to_string(base.s) + ", r = " + std::to_string(base.r) + ")");
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw DomainError("subset repeats a prime");

    mpz_class value = base.value;
    for (const std::uint64_t p : subset) {
        if (!pset.contains(p)) throw DomainError(std::to_string(p) + " is not in P(s,r)");
        value *= static_cast<unsigned long>(p);
    }
    return FamilyMember{base, std::move(subset), std::move(value)};
}

bool member_satisfies_criterion(const ConstructionBase& base, std::span<const std::uint64_t> subset,
                                const mpz_class& value, const FactorTable& table)
{
    if (table.limit() < base.s) throw DomainError("factor table does not reach s");

    auto q_minus_one_divides_base = [&](std::uint64_t q) {
        if (q == 2) return true;  // q - 1 = 1
        for (const auto& [p, beta] : factorize(q - 1, table).factors) {
            if (p > base.r) return false;
            std::uint64_t power = 1;
            for (unsigned k = 0; k < beta; ++k) power *= p;
            if (power > base.s) return false;
        }
        return mpz_divisible_ui_p(base.value.get_mpz_t(), q - 1) != 0;
    };

    mpz_class product = base.value;
    for (const auto& [p, e] : base.exponents)
        if (e > 0 && !q_minus_one_divides_base(p)) return false;
    for (const std::uint64_t q : subset) {
        if (!table.is_prime(q) || !q_minus_one_divides_base(q)) return false;
        product *= static_cast<unsigned long>(q);
    }
    return product == value;
}

bool verify_lemma3(const ConstructionBase& base, const ShiftedSmoothSet& pset,
                   std::span<const std::vector<std::uint64_t>> sample, const FactorTable& table)
{
    for (const auto& subset : sample) {
        const FamilyMember member = build_member(base, subset, pset);
        if (!member_satisfies_criterion(base, member.subset, member.value, table)) return false;
    }
    return true;
}

nlohmann::ordered_json to_json(const FamilyMember& member)
{
    return {{"D", member.base.get().value.get_str()}, {"subset", member.subset}, {"E", member.value.get_str()}};
}

}  // namespace ncforge
