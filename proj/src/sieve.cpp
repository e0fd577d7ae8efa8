#include "ncforge/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncforge/errors.hpp"
#include "ncforge/kernels.hpp"

namespace ncforge {

namespace {

void check_limit(std::uint64_t limit)
{
    if (limit < 2) throw DomainError("limit must be at least 2, got " + std::to_string(limit));
    if (limit > kMaxLimit) throw ResourceError("limit " + std::to_string(limit) + " exceeds 2^40");
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit)
{
    std::vector<std::uint8_t> composite(limit + 1, 0);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

// flags[i] = 1 iff lo + i is prime, for [lo, hi) with lo >= 0.
void sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base,
                   std::vector<std::uint8_t>& flags)
{
    flags.assign(hi - lo, 1);
    for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) flags[n - lo] = 0;
    for (const std::uint64_t p : base) {
        if (p * p >= hi) break;
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m < hi; m += p) flags[m - lo] = 0;
    }
}

std::size_t estimated_prime_count(std::uint64_t limit)
{
    const double x = double(limit);
    return std::size_t(1.26 * x / std::log(std::max(x, 3.0))) + 16;
}

}  // namespace

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> base_primes_for(std::uint64_t limit)
{
    return small_primes(isqrt(limit));
}

std::uint64_t PrimeTable::pi(std::uint64_t n) const
{
    if (n > limit) throw DomainError("pi(" + std::to_string(n) + ") beyond table limit " + std::to_string(limit));
    return std::upper_bound(primes.begin(), primes.end(), n) - primes.begin();
}

bool PrimeTable::contains(std::uint64_t p) const
{
    return std::binary_search(primes.begin(), primes.end(), p);
}

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options)
{
    check_limit(limit);
    if (options.segment_size == 0) throw DomainError("segment size must be positive");
    options.budget.require(estimated_prime_count(limit) * sizeof(std::uint64_t), "prime table");

    const auto base = base_primes_for(limit);
    const std::uint64_t seg = options.segment_size;
    const std::size_t blocks = (limit + 1 + seg - 1) / seg;
    std::vector<std::vector<std::uint64_t>> found(blocks);

    parallel_blocks(blocks, [&](std::size_t b) {
        const std::uint64_t lo = b * seg;
        const std::uint64_t hi = std::min<std::uint64_t>(limit + 1, lo + seg);
        std::vector<std::uint8_t> flags;
        sieve_segment(lo, hi, base, flags);
        auto& out = found[b];
        out.reserve(kernels::count_nonzero(flags));
        for (std::uint64_t i = 0; i < flags.size(); ++i)
            if (flags[i]) out.push_back(lo + i);
    });

    PrimeTable table;
    table.limit = limit;
    std::size_t total = 0;
    for (const auto& f : found) total += f.size();
    table.primes.reserve(total);
    for (auto& f : found) table.primes.insert(table.primes.end(), f.begin(), f.end());
    return table;
}

PrimeTable sieve_primes_monolithic(std::uint64_t limit, const MemoryBudget& budget)
{
    check_limit(limit);
    budget.require(limit + 1 + estimated_prime_count(limit) * sizeof(std::uint64_t), "monolithic sieve");
    PrimeTable table;
    table.limit = limit;
    table.primes = small_primes(limit);
    return table;
}

std::uint64_t count_primes(std::uint64_t limit, std::size_t segment_size)
{
    check_limit(limit);
    if (segment_size == 0) throw DomainError("segment size must be positive");
    const auto base = base_primes_for(limit);
    const std::size_t blocks = (limit + 1 + segment_size - 1) / segment_size;
    std::vector<std::uint64_t> counts(blocks, 0);
    parallel_blocks(blocks, [&](std::size_t b) {
        const std::uint64_t lo = b * segment_size;
        const std::uint64_t hi = std::min<std::uint64_t>(limit + 1, lo + segment_size);
        std::vector<std::uint8_t> flags;
        sieve_segment(lo, hi, base, flags);
        counts[b] = kernels::count_nonzero(flags);
    });
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    return total;
}

FactorTable build_factor_table(std::uint64_t limit, const MemoryBudget& budget)
{
    check_limit(limit);
    const std::size_t entries = limit / 2 + 1;
    budget.require(entries * sizeof(std::uint32_t), "factor table");

    FactorTable table;
    table.limit_ = limit;
    table.odd_spf_.assign(entries, 0);
    auto& spf = table.odd_spf_;
    for (std::uint64_t p = 3; p * p <= limit; p += 2) {
        if (spf[p / 2] != 0) continue;
        for (std::uint64_t j = p * p; j <= limit; j += 2 * p)
            if (spf[j / 2] == 0) spf[j / 2] = static_cast<std::uint32_t>(p);
    }
    return table;
}

std::uint64_t FactorTable::spf(std::uint64_t n) const
{
    if (n < 2 || n > limit_)
        throw DomainError("spf(" + std::to_string(n) + ") outside [2, " + std::to_string(limit_) + "]");
    if (n % 2 == 0) return 2;
    const std::uint32_t s = odd_spf_[n / 2];
    return s == 0 ? n : s;
}

bool FactorTable::is_prime(std::uint64_t n) const
{
    return n >= 2 && n <= limit_ && spf(n) == n;
}

std::uint64_t Factorization::product() const
{
    std::uint64_t v = 1;
    for (const auto& f : factors)
        for (unsigned k = 0; k < f.exponent; ++k) v *= f.prime;
    return v;
}

Factorization factorize(std::uint64_t n, const FactorTable& table)
{
    if (n < 2 || n > table.limit())
        throw DomainError("cannot factor " + std::to_string(n) + " with a table up to " +
                          std::to_string(table.limit()));
    Factorization f{n, {}};
    while (n > 1) {
        const std::uint64_t p = table.spf(n);
        unsigned e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        f.factors.push_back({p, e});
    }
    return f;
}

Factorization factorize(std::uint64_t n, const PrimeTable& table)
{
    if (n < 2) throw DomainError("cannot factor " + std::to_string(n));
    if (table.limit < isqrt(n))
        throw DomainError("prime table up to " + std::to_string(table.limit) + " cannot factor " +
                          std::to_string(n));
    Factorization f{n, {}};
    for (const std::uint64_t p : table.primes) {
        if (p * p > n) break;
        if (n % p != 0) continue;
        unsigned e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        f.factors.push_back({p, e});
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

void segment_greatest_prime_factors(std::uint64_t lo, std::uint64_t hi,
                                    std::span<const std::uint64_t> base_primes,
                                    std::span<std::uint64_t> out)
{
    if (lo < 1 || hi <= lo) throw DomainError("segment must satisfy 1 <= lo < hi");
    if (out.size() < hi - lo) throw DomainError("output span shorter than segment");

    std::vector<std::uint64_t> rem(hi - lo);
    for (std::uint64_t i = 0; i < rem.size(); ++i) rem[i] = lo + i;
    std::fill(out.begin(), out.begin() + (hi - lo), 1);

    for (const std::uint64_t p : base_primes) {
        if (p * p > hi - 1) break;
        for (std::uint64_t m = (lo + p - 1) / p * p; m < hi; m += p) {
            std::uint64_t& r = rem[m - lo];
            do r /= p;
            while (r % p == 0);
            out[m - lo] = p;
        }
    }
    for (std::uint64_t i = 0; i < rem.size(); ++i)
        if (rem[i] > 1) out[i] = rem[i];
}

}  // namespace ncforge
