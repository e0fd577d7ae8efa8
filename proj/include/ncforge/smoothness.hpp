#pragma once

// Smooth numbers Psi(x,y), smooth shifted primes P(x,y) / Pi(x,y), and the
// comparison table between Pi(z,y)/pi(z) and Psi(z,y)/z.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ncforge/sieve.hpp"

namespace ncforge {

// Largest prime dividing n; 1 for n = 1.
std::uint64_t greatest_prime_factor(std::uint64_t n, const FactorTable& table);

// #{1 <= n <= x : gpf(n) <= y}, counting n = 1.
std::uint64_t psi_count(std::uint64_t x, std::uint64_t y, const FactorTable& table);
// Same count by segment sweeps; memory independent of x.
std::uint64_t psi_count_segmented(std::uint64_t x, std::uint64_t y,
                                  std::size_t segment_size = kDefaultSegmentSize);

struct ShiftedSmoothSet {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::vector<std::uint64_t> members;  // primes p <= x with gpf(p - 1) <= y, increasing

    std::uint64_t count() const { return members.size(); }
    bool contains(std::uint64_t p) const;
};

// p = 2 is always a member because gpf(1) = 1.
ShiftedSmoothSet shifted_smooth_set(std::uint64_t x, std::uint64_t y, const PrimeTable& primes,
                                    const FactorTable& table);
// Pi(x,y) only.
std::uint64_t pi_smooth_count(std::uint64_t x, std::uint64_t y, const PrimeTable& primes,
                              const FactorTable& table);
std::uint64_t pi_smooth_count_segmented(std::uint64_t x, std::uint64_t y,
                                        std::size_t segment_size = kDefaultSegmentSize);

struct FixedY {
    std::uint64_t y;
};
struct PowerY {
    double u;  // y = floor(z^u)
};
struct HildebrandY {};  // y = round(exp(sqrt(log z)))

using YRule = std::variant<FixedY, PowerY, HildebrandY>;

std::uint64_t evaluate_y(const YRule& rule, std::uint64_t z);
// Parses "fixed:10", "power:0.5", "hild".
YRule parse_y_rule(const std::string& text);

struct ConjectureRow {
    std::uint64_t z = 0;
    std::uint64_t y = 0;
    std::uint64_t pi_count = 0;
    std::uint64_t pi_smooth_count = 0;
    std::uint64_t psi_count = 0;
    double lhs_ratio = 0;  // Pi(z,y) / pi(z)
    double rhs_ratio = 0;  // Psi(z,y) / z
};

// Rows are ordered by z. Tables must cover max(z_values).
std::vector<ConjectureRow> conjecture_table(std::vector<std::uint64_t> z_values, const YRule& rule,
                                            const PrimeTable& primes, const FactorTable& table);

// Ratios carry 12 significant digits.
std::string conjecture_csv(const std::vector<ConjectureRow>& rows);
nlohmann::ordered_json conjecture_json(const std::vector<ConjectureRow>& rows);

struct HildebrandRow {
    std::uint64_t z = 0;
    std::uint64_t y = 0;
    std::uint64_t psi_count = 0;
    double exponent = 0;  // -log(Psi(z,y)/z) / (sqrt(log z) * log log z)
};

// Empirical exponent of Psi(z, exp(sqrt(log z))) against z*exp(-e*sqrt(log z)*log log z).
std::vector<HildebrandRow> hildebrand_report(const std::vector<std::uint64_t>& z_values);

double round_significant(double value, int digits = 12);

}  // namespace ncforge
