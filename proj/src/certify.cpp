#include "ncforge/certify.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ncforge/construction.hpp"
#include "ncforge/errors.hpp"
#include "ncforge/smoothness.hpp"

namespace ncforge {

namespace {

constexpr double kMaxExponentBits = 1u << 31;

bool all_digits(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

double natural_log(const mpz_class& v)
{
    long exp = 0;
    const double mantissa = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(mantissa) + double(exp) * std::log(2.0);
}

// floor(e^k) with 30 guard digits beyond the integer part.
mpz_class floor_exp(const std::string& k_text, double k)
{
    const auto bits = static_cast<mpfr_prec_t>(std::ceil(k / std::log(2.0))) + 100 + 64;
    mpfr_t exponent, result;
    mpfr_init2(exponent, bits);
    mpfr_init2(result, bits);
    mpfr_set_str(exponent, k_text.c_str(), 10, MPFR_RNDN);
    mpfr_exp(result, exponent, MPFR_RNDD);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), result, MPFR_RNDD);
    mpfr_clear(exponent);
    mpfr_clear(result);
    return out;
}

std::uint64_t saturating_floor(long double v)
{
    if (!(v > 0)) return 0;
    if (v >= 9.0e18L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::floor(v));
}

// floor(v) where v may sit a rounding error below an integer (e.g. 117^2).
std::uint64_t floor_near_integer(long double v)
{
    const long double nearest = std::round(v);
    if (std::fabs(v - nearest) <= 1e-12L * std::max(1.0L, v)) return saturating_floor(nearest);
    return saturating_floor(v);
}

mpz_class pow_u64(std::uint64_t base, std::uint64_t exp)
{
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

LowerBoundCertificate zero_certificate(const XValue& x, const ScheduleParams& params, std::string note)
{
    LowerBoundCertificate cert;
    cert.x_notation = x.notation;
    cert.x = x.value;
    cert.r = params.r;
    cert.s = params.s;
    cert.feasible = params.feasible;
    cert.count = 0;
    cert.log10_count = 0;
    cert.note = std::move(note);
    return cert;
}

// D times the A largest members of P(s,r).
mpz_class max_member(const mpz_class& base, const std::vector<std::uint64_t>& members, std::uint64_t A)
{
    mpz_class v = base;
    for (std::uint64_t i = 0; i < A; ++i) v *= static_cast<unsigned long>(members[members.size() - 1 - i]);
    return v;
}

struct Workspace {
    PrimeTable primes;
    FactorTable table;
    ShiftedSmoothSet pset;
    ConstructionBase base;
};

Workspace build_workspace(std::uint64_t r, std::uint64_t s, const CertifyOptions& options)
{
    if (s > kMaxLimit) throw ResourceError("s = " + std::to_string(s) + " exceeds 2^40");
    Workspace w;
    w.primes = sieve_primes(s, SieveOptions{kDefaultSegmentSize, options.budget});
    w.table = build_factor_table(s, options.budget);
    w.pset = shifted_smooth_set(s, r, w.primes, w.table);
    w.base = build_base(s, r, w.primes);
    return w;
}

}  // namespace

XValue parse_x(const std::string& notation)
{
    XValue x;
    x.notation = notation;
    const auto caret = notation.find('^');
    if (caret == std::string::npos) {
        if (!all_digits(notation)) throw DomainError("malformed x: '" + notation + "'");
        x.value = mpz_class(notation, 10);
        if (x.value < 1) throw DomainError("x must be positive");
        x.log_value = natural_log(x.value);
        return x;
    }

    const std::string base = notation.substr(0, caret);
    const std::string exp = notation.substr(caret + 1);
    if (base == "e") {
        char* end = nullptr;
        const double k = std::strtod(exp.c_str(), &end);
        if (exp.empty() || end != exp.c_str() + exp.size() || !std::isfinite(k) || k < 0)
            throw DomainError("malformed exponent in '" + notation + "'");
        if (k / std::log(2.0) > kMaxExponentBits) throw ResourceError("x = " + notation + " is too large");
        x.value = floor_exp(exp, k);
        x.log_value = k;
        return x;
    }
    if (!all_digits(base) || !all_digits(exp) || exp.size() > 12)
        throw DomainError("malformed x: '" + notation + "'");
    const mpz_class b(base, 10);
    if (b < 2 || !b.fits_ulong_p()) throw DomainError("base of '" + notation + "' must be an integer >= 2");
    const std::uint64_t k = std::stoull(exp);
    const double bits = double(k) * std::log2(b.get_d());
    if (bits > kMaxExponentBits) throw ResourceError("x = " + notation + " is too large");
    x.value = pow_u64(b.get_ui(), k);
    x.log_value = double(k) * std::log(b.get_d());
    return x;
}

ScheduleParams schedule_params(const Schedule& sched)
{
    if (sched.kind == ScheduleKind::manual) {
        return {sched.r, sched.s, sched.r >= 2 && sched.r <= sched.s};
    }
    if (sched.x.value < 16) throw DomainError("theorem schedules need x >= 16");

    const long double lx = sched.x.log_value;
    const long double llx = std::log(lx);
    ScheduleParams p;
    if (sched.kind == ScheduleKind::theorem1) {
        if (!(sched.u > 0 && sched.u < 1)) throw DomainError("theorem1 schedule needs 0 < u < 1");
        p.r = saturating_floor(lx / (llx * llx));
        p.s = p.r == 0 ? 0 : floor_near_integer(std::pow(static_cast<long double>(p.r), 1.0L / sched.u));
    } else {
        const long double lllx = std::log(llx);
        const long double t = llx - 3 * lllx;
        p.r = saturating_floor(lx / (llx * llx * llx));
        p.s = t * t > 43.0L ? std::numeric_limits<std::uint64_t>::max() : floor_near_integer(std::exp(t * t));
    }
    p.feasible = p.r >= 2 && p.r <= p.s;
    return p;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

double log10_of(const mpz_class& value)
{
    if (value <= 0) return 0;
    long exp = 0;
    const double mantissa = mpz_get_d_2exp(&exp, value.get_mpz_t());
    return std::log10(mantissa) + double(exp) * std::log10(2.0);
}

LowerBoundCertificate certify_lower_bound(const Schedule& sched, const CertifyOptions& options)
{
    const ScheduleParams params = schedule_params(sched);
    if (!params.feasible) {
        return zero_certificate(sched.x, params,
                                "schedule infeasible: r = " + std::to_string(params.r) + ", s = " +
                                    std::to_string(params.s) + " violates 2 <= r <= s");
    }

    const Workspace w = build_workspace(params.r, params.s, options);
    LowerBoundCertificate cert = zero_certificate(sched.x, params, "");
    cert.pi = w.pset.count();
    cert.exponents = w.base.exponents;

    const mpz_class& D = w.base.value;
    const mpz_class& x = sched.x.value;
    if (D > x) {
        cert.note = "D(s,r) exceeds x; no member fits";
        return cert;
    }

    // proposal from log D + A log s <= log x, rounded down
    const double log_s = std::log(double(params.s));
    const double proposal = std::floor((sched.x.log_value - natural_log(D)) / log_s - 1e-9);
    std::uint64_t A = proposal > 0 ? std::min<std::uint64_t>(std::uint64_t(proposal), cert.pi) : 0;

    auto fits = [&](std::uint64_t a) { return D * pow_u64(params.s, a) <= x; };
    while (A > 0 && !fits(A)) --A;
    while (A < cert.pi && fits(A + 1)) ++A;
    if (A == cert.pi && fits(A + 1)) cert.note = "A capped at Pi(s,r)";

    while (A > 0 && max_member(D, w.pset.members, A) > x) --A;
    cert.A = A;
    cert.max_member_check = max_member(D, w.pset.members, A) <= x;
    cert.count = binomial(cert.pi, A);
    cert.log10_count = log10_of(cert.count);
    cert.lemma2_applicable = 2 * A <= cert.pi + 2;
    return cert;
}

bool lemma2_check(std::uint64_t a_max)
{
    if (a_max < 2) throw DomainError("lemma2_check needs a_max >= 2");
    for (std::uint64_t a = 2; a <= a_max; ++a) {
        for (std::uint64_t b = 1; b <= a / 2 + 1; ++b) {
            // C(a,b) >= a^b / b^b  <=>  C(a,b) * b^b >= a^b
            if (binomial(a, b) * pow_u64(b, b) < pow_u64(a, b)) return false;
        }
    }
    return true;
}

nlohmann::ordered_json to_json(const LowerBoundCertificate& cert)
{
    auto exponents = nlohmann::ordered_json::array();
    for (const auto& [p, e] : cert.exponents) exponents.push_back({p, e});
    nlohmann::ordered_json j = {{"x", cert.x_notation},
                        {"r", cert.r},
                        {"s", cert.s},
                        {"pi", cert.pi},
                        {"exponents", exponents},
                        {"A", cert.A},
                        {"count", cert.count.get_str()},
                        {"log10_count", cert.log10_count},
                        {"max_member_check", cert.max_member_check},
                        {"lemma2_applicable", cert.lemma2_applicable}};
    if (!cert.note.empty()) j["note"] = cert.note;
    return j;
}

namespace {

// signed JSON integers are accepted too, since hand-edited files rarely carry the unsigned tag
bool natural(const nlohmann::ordered_json& v)
{
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

template <class T>
T field(const nlohmann::ordered_json& doc, const char* name)
{
    if (!doc.contains(name)) throw DomainError(std::string("certificate lacks field '") + name + "'");
    const auto& v = doc.at(name);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw DomainError(std::string("field '") + name + "' must be a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw DomainError(std::string("field '") + name + "' must be a string");
    } else if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw DomainError(std::string("field '") + name + "' must be a number");
    } else {
        if (!natural(v)) throw DomainError(std::string("field '") + name + "' must be a natural");
    }
    return v.get<T>();
}

}  // namespace

VerifyReport verify_certificate(const nlohmann::ordered_json& doc, const CertifyOptions& options)
{
    if (!doc.is_object()) throw DomainError("certificate must be a JSON object");
    Schedule sched;
    sched.kind = ScheduleKind::manual;
    sched.x = parse_x(field<std::string>(doc, "x"));
    sched.r = field<std::uint64_t>(doc, "r");
    sched.s = field<std::uint64_t>(doc, "s");
    const auto pi = field<std::uint64_t>(doc, "pi");
    const auto A = field<std::uint64_t>(doc, "A");
    const auto count = field<std::string>(doc, "count");
    const auto log10_count = field<double>(doc, "log10_count");
    const auto max_member_check = field<bool>(doc, "max_member_check");
    const auto lemma2_applicable = field<bool>(doc, "lemma2_applicable");

    if (!doc.contains("exponents") || !doc["exponents"].is_array())
        throw DomainError("certificate lacks an 'exponents' array");
    std::vector<PrimePower> exponents;
    for (const auto& pair : doc["exponents"]) {
        if (!pair.is_array() || pair.size() != 2 || !natural(pair[0]) || !natural(pair[1]))
            throw DomainError("exponents must be [prime, exponent] pairs");
        exponents.push_back({pair[0].get<std::uint64_t>(), pair[1].get<unsigned>()});
    }

    const LowerBoundCertificate expected = certify_lower_bound(sched, options);
    VerifyReport report;
    auto expect = [&](bool same, const std::string& what) {
        if (!same) report.mismatches.push_back(what);
    };
    expect(pi == expected.pi, "pi: certificate " + std::to_string(pi) + ", recomputed " + std::to_string(expected.pi));
    expect(exponents == expected.exponents, "exponents differ from D(s,r)");
    expect(A == expected.A, "A: certificate " + std::to_string(A) + ", recomputed " + std::to_string(expected.A));
    expect(count == expected.count.get_str(), "count: certificate " + count + ", recomputed " + expected.count.get_str());
    expect(log10_count == expected.log10_count, "log10_count differs");
    expect(max_member_check == expected.max_member_check, "max_member_check differs");
    expect(lemma2_applicable == expected.lemma2_applicable, "lemma2_applicable differs");

    // The exponent vector must carry the claimed bound on its own.
    if (max_member_check && expected.feasible && exponents == expected.exponents) {
        const Workspace w = build_workspace(sched.r, sched.s, options);
        const mpz_class D = base_value(exponents);
        expect(A <= w.pset.count() && max_member(D, w.pset.members, A) <= sched.x.value,
               "D times the A largest primes of P(s,r) exceeds x");
    }
    return report;
}

EnumerationResult enumerate_certificate(const LowerBoundCertificate& cert, const CertifyOptions& options)
{
    if (!cert.feasible || cert.count == 0) return EnumerationResult{};
    if (cert.count > kEnumerationLimit)
        throw ResourceError("certificate counts " + cert.count.get_str() + " members; enumeration is capped at " +
                            std::to_string(kEnumerationLimit));

    const Workspace w = build_workspace(cert.r, cert.s, options);
    const auto& members = w.pset.members;
    const std::uint64_t A = cert.A;

    EnumerationResult result;
    std::vector<mpz_class> values;
    values.reserve(cert.count.get_ui());
    std::vector<std::uint64_t> idx(A), subset(A);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        for (std::uint64_t i = 0; i < A; ++i) subset[i] = members[idx[i]];
        const FamilyMember m = build_member(w.base, subset, w.pset);
        result.within_x = result.within_x && m.value <= cert.x;
        result.nc_valid = result.nc_valid && member_satisfies_criterion(w.base, m.subset, m.value, w.table);
        values.push_back(m.value);
        ++result.members;

        // next combination in lexicographic order
        std::uint64_t i = A;
        while (i > 0 && idx[i - 1] == members.size() - A + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::uint64_t j = i; j < A; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(values.begin(), values.end());
    result.distinct = std::adjacent_find(values.begin(), values.end()) == values.end();
    result.complete = cert.count == static_cast<unsigned long>(result.members);
    return result;
}

std::vector<ExponentRow> theorem_exponent_report(const std::vector<std::string>& x_values, ScheduleKind kind,
                                                 double u, std::uint64_t r, std::uint64_t s,
                                                 const CertifyOptions& options)
{
    std::vector<ExponentRow> rows;
    for (const auto& text : x_values) {
        Schedule sched{kind, parse_x(text), u, r, s};
        const LowerBoundCertificate cert = certify_lower_bound(sched, options);
        ExponentRow row;
        row.x = text;
        row.feasible = cert.feasible && cert.count > 0;
        row.r = cert.r;
        row.s = cert.s;
        row.A = cert.A;
        row.log10_count = cert.log10_count;
        if (row.feasible) {
            const double lx = sched.x.log_value;
            const double log_count = cert.log10_count * std::log(10.0);
            if (kind == ScheduleKind::theorem2) {
                const double llx = std::log(lx), lllx = std::log(llx);
                row.exponent = (lx - log_count) * llx / (lx * lllx);
            } else {
                row.exponent = log_count / lx;
            }
        }
        if (kind == ScheduleKind::theorem1) row.target = 1.0 - u;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ncforge
