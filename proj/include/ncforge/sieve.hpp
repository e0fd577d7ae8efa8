#pragma once

// Prime tables, smallest-prime-factor tables and segment sweeps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ncforge/config.hpp"

namespace ncforge {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;  // every prime <= limit, increasing

    std::uint64_t count() const { return primes.size(); }
    // pi(n) for n <= limit.
    std::uint64_t pi(std::uint64_t n) const;
    bool contains(std::uint64_t p) const;
};

struct SieveOptions {
    std::size_t segment_size = kDefaultSegmentSize;
    MemoryBudget budget{};
};

// Segmented sieve; output is independent of segment size and thread count.
PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options = {});
// Single-array reference sieve.
PrimeTable sieve_primes_monolithic(std::uint64_t limit, const MemoryBudget& budget = {});
// pi(limit) without materializing the primes.
std::uint64_t count_primes(std::uint64_t limit, std::size_t segment_size = kDefaultSegmentSize);

// Smallest prime factor for every n in [2, limit]. Only odd n are stored;
// even n answer 2 arithmetically. Immutable once built.
class FactorTable {
public:
    FactorTable() = default;

    std::uint64_t limit() const { return limit_; }
    std::uint64_t spf(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;

private:
    friend FactorTable build_factor_table(std::uint64_t limit, const MemoryBudget& budget);

    std::uint64_t limit_ = 0;
    // odd_spf_[n / 2] for odd n; 0 marks a prime
    std::vector<std::uint32_t> odd_spf_;
};

FactorTable build_factor_table(std::uint64_t limit, const MemoryBudget& budget = {});

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 0;
    std::vector<PrimePower> factors;  // primes strictly increasing

    std::uint64_t product() const;
};

Factorization factorize(std::uint64_t n, const FactorTable& table);
// Trial division by the table's primes; valid for n <= limit^2.
Factorization factorize(std::uint64_t n, const PrimeTable& table);

std::uint64_t isqrt(std::uint64_t n);

// Primes <= isqrt(limit), the sieving base for any segment ending at limit.
std::vector<std::uint64_t> base_primes_for(std::uint64_t limit);

// out[i] = greatest prime factor of lo + i for the segment [lo, hi), with the
// convention gpf(1) = 1. base_primes must contain every prime <= isqrt(hi - 1).
void segment_greatest_prime_factors(std::uint64_t lo, std::uint64_t hi,
                                    std::span<const std::uint64_t> base_primes,
                                    std::span<std::uint64_t> out);

}  // namespace ncforge
