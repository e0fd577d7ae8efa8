#include "ncforge/novak.hpp"

#include <bit>
#include <numeric>
#include <string>

#include "ncforge/errors.hpp"
#include "ncforge/kernels.hpp"

namespace ncforge {

namespace {

NovakVerdict criterion_from(const Factorization& f)
{
    for (const auto& [p, e] : f.factors) {
        if (f.n % (p - 1) != 0) return {f.n, false, PrimeWitness{p}};
    }
    return {f.n, true, std::nullopt};
}

void check_range(std::uint64_t n, std::uint64_t limit)
{
    if (n == 0 || n > limit)
        throw DomainError(std::to_string(n) + " outside [1, " + std::to_string(limit) + "]");
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod)
{
    if (mod == 1) return 0;
    unsigned __int128 result = 1, b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

NovakVerdict is_nc_criterion(std::uint64_t n, const FactorTable& table)
{
    check_range(n, table.limit());
    if (n == 1) return {1, kCountOne, std::nullopt};
    return criterion_from(factorize(n, table));
}

NovakVerdict is_nc_criterion(std::uint64_t n, const PrimeTable& table)
{
    if (n == 0) throw DomainError("n must be positive");
    if (n == 1) return {1, kCountOne, std::nullopt};
    return criterion_from(factorize(n, table));
}

NovakVerdict is_nc_definition(std::uint64_t n)
{
    if (n == 0) throw DomainError("n must be positive");
    if (n > kDefinitionOracleLimit)
        throw ResourceError("definitional oracle is capped at " + std::to_string(kDefinitionOracleLimit));
    for (std::uint64_t a = 2; a < n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        if (pow_mod(a, n, n) != 1) return {n, false, BaseWitness{a}};
    }
    return {n, n != 1 || kCountOne, std::nullopt};
}

std::uint64_t carmichael_lambda(std::uint64_t n, const FactorTable& table)
{
    check_range(n, table.limit());
    if (n == 1) return 1;
    std::uint64_t lambda = 1;
    for (const auto& [p, e] : factorize(n, table).factors) {
        std::uint64_t part;
        if (p == 2) {
            part = e == 1 ? 1 : e == 2 ? 2 : std::uint64_t(1) << (e - 2);
        } else {
            part = p - 1;
            for (unsigned k = 1; k < e; ++k) part *= p;
        }
        lambda = std::lcm(lambda, part);
    }
    return lambda;
}

std::uint64_t count_nc(std::uint64_t x, const FactorTable& table)
{
    check_range(x, table.limit());
    std::uint64_t count = kCountOne ? 1 : 0;
    for (std::uint64_t n = 2; n <= x; n += 2)
        count += is_nc_criterion(n, table).is_nc;
    return count;
}

std::vector<std::uint64_t> list_nc(std::uint64_t x, const FactorTable& table)
{
    check_range(x, table.limit());
    std::vector<std::uint64_t> out;
    if (kCountOne) out.push_back(1);
    // odd n > 1 always fail: an odd prime p | n has even p - 1
    for (std::uint64_t n = 2; n <= x; n += 2)
        if (is_nc_criterion(n, table).is_nc) out.push_back(n);
    return out;
}

void nc_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base_primes,
                std::span<std::uint8_t> member)
{
    if (lo < 1 || hi <= lo) throw DomainError("segment must satisfy 1 <= lo < hi");
    if (member.size() < hi - lo) throw DomainError("output span shorter than segment");

    std::vector<std::uint64_t> rem(hi - lo, 0);
    for (std::uint64_t n = lo; n < hi; ++n) {
        const bool even = n % 2 == 0;
        member[n - lo] = even || (n == 1 && kCountOne);
        if (even) rem[n - lo] = n >> std::countr_zero(n);
    }

    for (const std::uint64_t p : base_primes) {
        if (p == 2) continue;
        if (p * p > hi - 1) break;
        const std::uint64_t step = 2 * p;
        for (std::uint64_t m = (lo + step - 1) / step * step; m < hi; m += step) {
            const std::uint64_t i = m - lo;
            if (!member[i]) continue;
            if (m % (p - 1) != 0) {
                member[i] = 0;
                continue;
            }
            std::uint64_t& r = rem[i];
            do r /= p;
            while (r % p == 0);
        }
    }

    for (std::uint64_t i = 0; i < rem.size(); ++i) {
        const std::uint64_t q = rem[i];
        if (member[i] && q > 1 && (lo + i) % (q - 1) != 0) member[i] = 0;
    }
}

std::uint64_t count_nc_segmented(std::uint64_t x, std::size_t segment_size)
{
    if (x == 0) throw DomainError("x must be positive");
    if (x > kMaxLimit) throw ResourceError("x exceeds 2^40");
    if (segment_size == 0) throw DomainError("segment size must be positive");

    const auto base = base_primes_for(x);
    const std::size_t blocks = (x + segment_size - 1) / segment_size;
    std::vector<std::uint64_t> counts(blocks, 0);
    parallel_blocks(blocks, [&](std::size_t b) {
        const std::uint64_t lo = 1 + b * segment_size;
        const std::uint64_t hi = std::min<std::uint64_t>(x + 1, lo + segment_size);
        std::vector<std::uint8_t> member(hi - lo);
        nc_segment(lo, hi, base, member);
        counts[b] = kernels::count_nonzero(member);
    });
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    return total;
}

std::vector<std::uint64_t> list_nc_segmented(std::uint64_t x, std::size_t segment_size)
{
    if (x == 0) throw DomainError("x must be positive");
    if (x > kMaxLimit) throw ResourceError("x exceeds 2^40");
    if (segment_size == 0) throw DomainError("segment size must be positive");

    const auto base = base_primes_for(x);
    const std::size_t blocks = (x + segment_size - 1) / segment_size;
    std::vector<std::vector<std::uint64_t>> found(blocks);
    parallel_blocks(blocks, [&](std::size_t b) {
        const std::uint64_t lo = 1 + b * segment_size;
        const std::uint64_t hi = std::min<std::uint64_t>(x + 1, lo + segment_size);
        std::vector<std::uint8_t> member(hi - lo);
        nc_segment(lo, hi, base, member);
        for (std::uint64_t i = 0; i < member.size(); ++i)
            if (member[i]) found[b].push_back(lo + i);
    });
    std::vector<std::uint64_t> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    return out;
}

nlohmann::ordered_json to_json(const NovakVerdict& verdict)
{
    nlohmann::ordered_json j = {{"n", verdict.n}, {"is_nc", verdict.is_nc}};
    if (verdict.witness) {
        if (const auto* p = std::get_if<PrimeWitness>(&*verdict.witness))
            j["witness"] = {{"prime", p->prime}};
        else
            j["witness"] = {{"base", std::get<BaseWitness>(*verdict.witness).base}};
    }
    return j;
}

}  // namespace ncforge
