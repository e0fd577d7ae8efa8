#include "ncforge/smoothness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "ncforge/errors.hpp"
#include "ncforge/kernels.hpp"

namespace ncforge {

namespace {

constexpr std::size_t kChunk = 4096;

std::uint64_t parse_natural(const std::string& text, const char* what)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-')
        throw DomainError(std::string("malformed ") + what + ": " + text);
    return v;
}

}  // namespace

std::uint64_t greatest_prime_factor(std::uint64_t n, const FactorTable& table)
{
    if (n == 0 || n > table.limit())
        throw DomainError("gpf(" + std::to_string(n) + ") outside [1, " + std::to_string(table.limit()) + "]");
    if (n == 1) return 1;
    std::uint64_t largest = 1;
    while (n > 1) {
        const std::uint64_t p = table.spf(n);
        largest = p;
        do n /= p;
        while (n % p == 0);
    }
    return largest;
}

std::uint64_t psi_count(std::uint64_t x, std::uint64_t y, const FactorTable& table)
{
    if (x == 0 || y == 0) throw DomainError("psi_count needs x >= 1 and y >= 1");
    if (x > table.limit())
        throw DomainError("x = " + std::to_string(x) + " beyond factor table limit " + std::to_string(table.limit()));

    std::array<std::uint64_t, kChunk> gpf{};
    std::uint64_t count = 0;
    for (std::uint64_t lo = 1; lo <= x; lo += kChunk) {
        const std::uint64_t hi = std::min<std::uint64_t>(x + 1, lo + kChunk);
        for (std::uint64_t n = lo; n < hi; ++n) gpf[n - lo] = greatest_prime_factor(n, table);
        count += kernels::count_le(std::span(gpf.data(), hi - lo), y);
    }
    return count;
}

std::uint64_t psi_count_segmented(std::uint64_t x, std::uint64_t y, std::size_t segment_size)
{
    if (x == 0 || y == 0) throw DomainError("psi_count needs x >= 1 and y >= 1");
    if (x > kMaxLimit) throw ResourceError("x exceeds 2^40");
    if (segment_size == 0) throw DomainError("segment size must be positive");

    const auto base = base_primes_for(x);
    const std::size_t blocks = (x + segment_size - 1) / segment_size;
    std::vector<std::uint64_t> counts(blocks, 0);
    parallel_blocks(blocks, [&](std::size_t b) {
        const std::uint64_t lo = 1 + b * segment_size;
        const std::uint64_t hi = std::min<std::uint64_t>(x + 1, lo + segment_size);
        std::vector<std::uint64_t> gpf(hi - lo);
        segment_greatest_prime_factors(lo, hi, base, gpf);
        counts[b] = kernels::count_le(gpf, y);
    });
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    return total;
}

bool ShiftedSmoothSet::contains(std::uint64_t p) const
{
    return std::binary_search(members.begin(), members.end(), p);
}

namespace {

void check_shifted_args(std::uint64_t x, std::uint64_t y, const PrimeTable& primes, const FactorTable& table)
{
    if (x < 2 || y < 1) throw DomainError("shifted smooth primes need x >= 2 and y >= 1");
    if (x > primes.limit || x > table.limit())
        throw DomainError("x = " + std::to_string(x) + " beyond table limits");
}

}  // namespace

ShiftedSmoothSet shifted_smooth_set(std::uint64_t x, std::uint64_t y, const PrimeTable& primes,
                                    const FactorTable& table)
{
    check_shifted_args(x, y, primes, table);
    ShiftedSmoothSet set{x, y, {}};
    for (const std::uint64_t p : primes.primes) {
        if (p > x) break;
        if (greatest_prime_factor(p - 1, table) <= y) set.members.push_back(p);
    }
    return set;
}

std::uint64_t pi_smooth_count(std::uint64_t x, std::uint64_t y, const PrimeTable& primes,
                              const FactorTable& table)
{
    check_shifted_args(x, y, primes, table);
    std::array<std::uint64_t, kChunk> gpf{};
    std::uint64_t count = 0;
    std::size_t fill = 0;
    for (const std::uint64_t p : primes.primes) {
        if (p > x) break;
        gpf[fill++] = greatest_prime_factor(p - 1, table);
        if (fill == kChunk) {
            count += kernels::count_le(gpf, y);
            fill = 0;
        }
    }
    return count + kernels::count_le(std::span(gpf.data(), fill), y);
}

std::uint64_t pi_smooth_count_segmented(std::uint64_t x, std::uint64_t y, std::size_t segment_size)
{
    if (x < 2 || y < 1) throw DomainError("shifted smooth primes need x >= 2 and y >= 1");
    if (x > kMaxLimit) throw ResourceError("x exceeds 2^40");
    if (segment_size == 0) throw DomainError("segment size must be positive");

    const auto base = base_primes_for(x);
    const std::size_t blocks = (x + segment_size - 1) / segment_size;
    std::vector<std::uint64_t> counts(blocks, 0);
    parallel_blocks(blocks, [&](std::size_t b) {
        // candidates n in [lo, hi); the sweep starts one earlier to see n - 1
        const std::uint64_t lo = std::max<std::uint64_t>(2, 1 + b * segment_size);
        const std::uint64_t hi = std::min<std::uint64_t>(x + 1, 1 + (b + 1) * segment_size);
        if (lo >= hi) return;
        std::vector<std::uint64_t> gpf(hi - lo + 1);
        segment_greatest_prime_factors(lo - 1, hi, base, gpf);
        std::vector<std::uint64_t> shifted;
        for (std::uint64_t n = lo; n < hi; ++n)
            if (gpf[n - lo + 1] == n) shifted.push_back(gpf[n - lo]);
        counts[b] = kernels::count_le(shifted, y);
    });
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    return total;
}

std::uint64_t evaluate_y(const YRule& rule, std::uint64_t z)
{
    double y = 0;
    if (const auto* f = std::get_if<FixedY>(&rule)) {
        y = double(f->y);
        if (f->y >= 1) return f->y;
    } else if (const auto* p = std::get_if<PowerY>(&rule)) {
        if (!(p->u > 0)) throw DomainError("power rule needs u > 0");
        y = std::floor(std::pow(double(z), p->u));
    } else {
        y = std::round(std::exp(std::sqrt(std::log(double(z)))));
    }
    if (!(y >= 1)) throw DomainError("y rule evaluates below 1 at z = " + std::to_string(z));
    return static_cast<std::uint64_t>(y);
}

YRule parse_y_rule(const std::string& text)
{
    if (text == "hild") return HildebrandY{};
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        const std::string arg = text.substr(colon + 1);
        if (kind == "fixed") return FixedY{parse_natural(arg, "fixed y")};
        if (kind == "power") {
            char* end = nullptr;
            const double u = std::strtod(arg.c_str(), &end);
            if (arg.empty() || end != arg.c_str() + arg.size() || !(u > 0))
                throw DomainError("malformed power exponent: " + arg);
            return PowerY{u};
        }
    }
    throw DomainError("unknown y rule '" + text + "' (expected fixed:<y>, power:<u> or hild)");
}

std::vector<ConjectureRow> conjecture_table(std::vector<std::uint64_t> z_values, const YRule& rule,
                                            const PrimeTable& primes, const FactorTable& table)
{
    if (z_values.empty()) throw DomainError("conjecture table needs at least one z");
    std::sort(z_values.begin(), z_values.end());
    std::vector<std::uint64_t> ys(z_values.size());
    for (std::size_t i = 0; i < z_values.size(); ++i) {
        const std::uint64_t z = z_values[i];
        if (z < 2) throw DomainError("z must be at least 2");
        if (z > primes.limit || z > table.limit())
            throw DomainError("z = " + std::to_string(z) + " beyond table limits");
        ys[i] = evaluate_y(rule, z);
    }

    std::vector<ConjectureRow> rows(z_values.size());
    parallel_blocks(rows.size(), [&](std::size_t i) {
        ConjectureRow& row = rows[i];
        row.z = z_values[i];
        row.y = ys[i];
        row.pi_count = primes.pi(row.z);
        row.pi_smooth_count = pi_smooth_count(row.z, row.y, primes, table);
        row.psi_count = psi_count(row.z, row.y, table);
        row.lhs_ratio = double(row.pi_smooth_count) / double(row.pi_count);
        row.rhs_ratio = double(row.psi_count) / double(row.z);
    });
    return rows;
}

double round_significant(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

std::string conjecture_csv(const std::vector<ConjectureRow>& rows)
{
    std::ostringstream out;
    out << "z,y,pi,pi_smooth,psi,lhs_ratio,rhs_ratio\n";
    char buf[64];
    for (const auto& r : rows) {
        out << r.z << ',' << r.y << ',' << r.pi_count << ',' << r.pi_smooth_count << ',' << r.psi_count;
        std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", r.lhs_ratio, r.rhs_ratio);
        out << buf;
    }
    return out.str();
}

nlohmann::ordered_json conjecture_json(const std::vector<ConjectureRow>& rows)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"z", r.z},
                       {"y", r.y},
                       {"pi", r.pi_count},
                       {"pi_smooth", r.pi_smooth_count},
                       {"psi", r.psi_count},
                       {"lhs_ratio", round_significant(r.lhs_ratio)},
                       {"rhs_ratio", round_significant(r.rhs_ratio)}});
    }
    return arr;
}

std::vector<HildebrandRow> hildebrand_report(const std::vector<std::uint64_t>& z_values)
{
    if (z_values.empty()) throw DomainError("hildebrand report needs at least one z");
    std::vector<HildebrandRow> rows;
    for (const std::uint64_t z : z_values) {
        // log log z must be positive
        if (z < 16) throw DomainError("hildebrand report needs z >= 16");
        HildebrandRow row;
        row.z = z;
        row.y = evaluate_y(HildebrandY{}, z);
        row.psi_count = psi_count_segmented(z, row.y);
        const double lz = std::log(double(z));
        row.exponent = -std::log(double(row.psi_count) / double(z)) / (std::sqrt(lz) * std::log(lz));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ncforge
