#pragma once

// Finite lower-bound certificates N_C(x) >= C(Pi(s,r), A).
//
// For integers 2 <= r <= s every subset of P(s,r) of size A gives a distinct
// member E = D(s,r) * prod(subset). If D times the A largest primes of P(s,r)
// is <= x, all C(Pi, A) such members are <= x.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "ncforge/config.hpp"
#include "ncforge/sieve.hpp"

namespace ncforge {

// An exact bound x with the notation it was given in: a decimal string,
// "<b>^<k>" for integers b, k, or "e^<k>" (x = floor(e^k), k real).
struct XValue {
    std::string notation;
    mpz_class value;
    double log_value = 0;  // natural log, for proposals only
};

XValue parse_x(const std::string& notation);

enum class ScheduleKind { theorem1, theorem2, manual };

struct Schedule {
    ScheduleKind kind = ScheduleKind::manual;
    XValue x;
    double u = 0.5;        // theorem1 only, 0 < u < 1
    std::uint64_t r = 0;   // manual only
    std::uint64_t s = 0;   // manual only
};

struct ScheduleParams {
    std::uint64_t r = 0;
    std::uint64_t s = 0;
    bool feasible = false;  // 2 <= r <= s
};

// theorem1: r = floor(log x / (log log x)^2), s = floor(r^(1/u))
// theorem2: r = floor(log x / (log log x)^3), s = floor(exp((log log x - 3 log log log x)^2))
// manual:   passthrough
// The t1/t2 schedules need x >= 16.
ScheduleParams schedule_params(const Schedule& sched);

struct LowerBoundCertificate {
    std::string x_notation;
    mpz_class x;
    std::uint64_t r = 0;
    std::uint64_t s = 0;
    bool feasible = false;
    std::uint64_t pi = 0;  // Pi(s, r)
    std::vector<PrimePower> exponents;
    std::uint64_t A = 0;
    mpz_class count = 0;  // C(pi, A)
    double log10_count = 0;
    bool max_member_check = false;
    bool lemma2_applicable = false;  // A <= pi/2 + 1
    std::string note;
};

struct CertifyOptions {
    MemoryBudget budget{};
};

mpz_class binomial(std::uint64_t n, std::uint64_t k);

// A is the largest integer with D * s^A <= x (float proposal, exact
// correction), capped at Pi(s,r); the max-member product is then checked
// exactly and A lowered until it passes. Infeasible schedules give count 0.
LowerBoundCertificate certify_lower_bound(const Schedule& sched, const CertifyOptions& options = {});

// C(a,b) >= (a/b)^b for 2 <= a <= a_max, 1 <= b <= floor(a/2) + 1, in exact arithmetic.
bool lemma2_check(std::uint64_t a_max);

double log10_of(const mpz_class& value);

nlohmann::ordered_json to_json(const LowerBoundCertificate& cert);

struct VerifyReport {
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Recomputes every field from (x, r, s) and the exponent vector. Throws
// DomainError when the document does not follow the certificate schema.
VerifyReport verify_certificate(const nlohmann::ordered_json& doc, const CertifyOptions& options = {});

struct EnumerationResult {
    std::uint64_t members = 0;
    bool within_x = true;
    bool distinct = true;
    bool nc_valid = true;
    bool complete = true;  // members == count

    bool sound() const { return within_x && distinct && nc_valid && complete; }
};

inline constexpr std::uint64_t kEnumerationLimit = 100'000;

// Builds every size-A member behind a certificate. Requires count <= 1e5.
EnumerationResult enumerate_certificate(const LowerBoundCertificate& cert, const CertifyOptions& options = {});

struct ExponentRow {
    std::string x;
    bool feasible = false;
    std::uint64_t r = 0;
    std::uint64_t s = 0;
    std::uint64_t A = 0;
    double log10_count = 0;
    std::optional<double> exponent;  // log(count)/log(x); theorem2: the equivalent d
    std::optional<double> target;    // 1 - u for theorem1
};

// Comparison only; nothing here asserts convergence.
std::vector<ExponentRow> theorem_exponent_report(const std::vector<std::string>& x_values, ScheduleKind kind,
                                                 double u, std::uint64_t r = 0, std::uint64_t s = 0,
                                                 const CertifyOptions& options = {});

}  // namespace ncforge
