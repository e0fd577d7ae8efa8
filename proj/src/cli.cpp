#include "ncforge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncforge/certify.hpp"
#include "ncforge/construction.hpp"
#include "ncforge/dickman.hpp"
#include "ncforge/errors.hpp"
#include "ncforge/novak.hpp"
#include "ncforge/sieve.hpp"
#include "ncforge/smoothness.hpp"

namespace ncforge::cli {

namespace {

enum class Format { plain, json, csv };

struct Globals {
    Format format = Format::plain;
    MemoryBudget budget{};
};

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::uint64_t> parse_prime_list(const std::string& text)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_natural(item));
    return out;
}

double parse_real(const std::string& text, const char* what)
{
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
        throw DomainError(std::string("malformed ") + what + ": " + text);
    return v;
}

void emit_count(std::ostream& out, Format format, const std::map<std::string, std::uint64_t>& inputs,
                const char* name, std::uint64_t value)
{
    if (format == Format::json) {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : inputs) j[k] = v;
        j[name] = value;
        out << j.dump() << '\n';
    } else if (format == Format::csv) {
        for (const auto& [k, v] : inputs) out << k << ',';
        out << name << '\n';
        for (const auto& [k, v] : inputs) out << v << ',';
        out << value << '\n';
    } else {
        out << value << '\n';
    }
}

std::string plain_certificate(const LowerBoundCertificate& c)
{
    std::ostringstream o;
    o << "x                 " << c.x_notation << '\n'
      << "r, s              " << c.r << ", " << c.s << (c.feasible ? "" : " (infeasible)") << '\n'
      << "Pi(s,r)           " << c.pi << '\n'
      << "D(s,r)            " << base_value(c.exponents).get_str() << '\n'
      << "A                 " << c.A << '\n'
      << "count C(Pi,A)     " << c.count.get_str() << '\n'
      << "log10 count       " << format_real(c.log10_count) << '\n'
      << "max member <= x   " << (c.max_member_check ? "yes" : "no") << '\n'
      << "A <= Pi/2 + 1     " << (c.lemma2_applicable ? "yes" : "no") << '\n';
    if (!c.note.empty()) o << "note              " << c.note << '\n';
    return o.str();
}

}  // namespace

std::uint64_t parse_natural(const std::string& text)
{
    const XValue x = parse_x(text);
    if (!x.value.fits_ulong_p()) throw ResourceError(text + " does not fit in 64 bits");
    return x.value.get_ui();
}

std::vector<std::uint64_t> parse_z_values(const std::string& text)
{
    if (text.find(':') == std::string::npos) {
        auto values = parse_prime_list(text);
        if (values.empty()) throw DomainError("empty z list");
        return values;
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("z range must be lo:hi:step or lo:hi:*factor");
    const std::uint64_t lo = parse_natural(parts[0]), hi = parse_natural(parts[1]);
    if (lo == 0 || hi < lo) throw DomainError("z range needs 1 <= lo <= hi");
    std::vector<std::uint64_t> out;
    if (!parts[2].empty() && parts[2][0] == '*') {
        const std::uint64_t f = parse_natural(parts[2].substr(1));
        if (f < 2) throw DomainError("geometric factor must be at least 2");
        for (std::uint64_t z = lo; z <= hi; z *= f) {
            out.push_back(z);
            if (z > hi / f) break;
        }
    } else {
        const std::uint64_t step = parse_natural(parts[2]);
        if (step == 0) throw DomainError("range step must be positive");
        for (std::uint64_t z = lo; z <= hi; z += step) {
            out.push_back(z);
            if (hi - z < step) break;
        }
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"nc-forge: Novak-Carmichael numbers, smooth shifted primes and lower-bound certificates", "nc-forge"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::string format_text = "plain", memory_text;
    app.add_option("--format", format_text, "Output format: plain, json or csv")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    app.add_option("--limit-memory", memory_text, "Memory budget for tables, e.g. 512M or 2G");

    // nc
    auto* nc = app.add_subcommand("nc", "Novak-Carmichael membership and counts");
    nc->require_subcommand(1);
    nc->fallthrough();
    std::string check_n, oracle = "criterion", count_limit, list_limit;
    bool monolithic = false;
    auto* nc_check = nc->add_subcommand("check", "Decide membership of n");
    nc_check->add_option("n", check_n)->required();
    nc_check->add_option("--oracle", oracle, "criterion, definition or lambda")
        ->check(CLI::IsMember({"criterion", "definition", "lambda"}));
    auto* nc_count = nc->add_subcommand("count", "Count members up to a limit");
    nc_count->add_option("--limit", count_limit)->required();
    nc_count->add_flag("--monolithic", monolithic, "Use a full factor table instead of segments");
    auto* nc_list = nc->add_subcommand("list", "List members up to a limit");
    nc_list->add_option("--limit", list_limit)->required();
    nc_list->add_flag("--monolithic", monolithic, "Use a full factor table instead of segments");

    // smooth
    auto* smooth = app.add_subcommand("smooth", "Smooth numbers, smooth shifted primes and Dickman rho");
    smooth->require_subcommand(1);
    smooth->fallthrough();
    std::string sx, sy, su, hz;
    auto* psi = smooth->add_subcommand("psi", "Psi(x,y)");
    psi->add_option("--x", sx)->required();
    psi->add_option("--y", sy)->required();
    auto* pi = smooth->add_subcommand("pi", "Pi(x,y): primes p <= x with p - 1 y-smooth");
    pi->add_option("--x", sx)->required();
    pi->add_option("--y", sy)->required();
    auto* rho = smooth->add_subcommand("rho", "Dickman rho(u)");
    rho->add_option("--u", su)->required();
    auto* hild = smooth->add_subcommand("hild", "Empirical exponent of Psi(z, exp(sqrt(log z)))");
    hild->add_option("--z", hz)->required();

    // conjecture
    std::string cz, y_rule;
    auto* conj = app.add_subcommand("conjecture", "Compare Pi(z,y)/pi(z) with Psi(z,y)/z");
    conj->fallthrough();
    conj->add_option("--z", cz, "List a,b,c or range lo:hi:step or lo:hi:*factor")->required();
    conj->add_option("--y-rule", y_rule, "fixed:<y>, power:<u> or hild")->required();

    // construct
    std::string cr, cs, subset_text;
    bool all_subsets = false;
    auto* construct = app.add_subcommand("construct", "Build D(s,r) and members D * prod(subset)");
    construct->fallthrough();
    construct->add_option("--r", cr)->required();
    construct->add_option("--s", cs)->required();
    auto* subset_opt = construct->add_option("--subset", subset_text, "Comma-separated primes of P(s,r)");
    construct->add_flag("--all", all_subsets, "Every subset of P(s,r) (needs Pi(s,r) <= 20)")->excludes(subset_opt);

    // certify
    std::string x_text, cu, schedule, kr, ks, out_path;
    bool enumerate = false;
    auto* certify = app.add_subcommand("certify", "Emit a lower-bound certificate for N_C(x)");
    certify->fallthrough();
    certify->add_option("--x", x_text, "Decimal, b^k or e^k")->required();
    certify->add_option("--u", cu);
    certify->add_option("--schedule", schedule)->check(CLI::IsMember({"t1", "t2"}));
    certify->add_option("--r", kr);
    certify->add_option("--s", ks);
    certify->add_flag("--enumerate", enumerate, "Build every member and re-check it (count <= 1e5)");
    certify->add_option("--out", out_path, "Also write the certificate JSON to this file");

    // report
    std::string rx;
    auto* report = app.add_subcommand("report", "Exponent of the certified bound against the asymptotic target");
    report->fallthrough();
    report->add_option("--x", rx, "Comma-separated x values")->required();
    report->add_option("--u", cu);
    report->add_option("--schedule", schedule)->check(CLI::IsMember({"t1", "t2"}));
    report->add_option("--r", kr);
    report->add_option("--s", ks);

    // verify
    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
    verify->fallthrough();
    verify->add_option("--cert", cert_path)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kDomainError;
    }

    try {
        g.format = format_text == "json" ? Format::json : format_text == "csv" ? Format::csv : Format::plain;
        if (!memory_text.empty()) g.budget = parse_memory_budget(memory_text);

        auto schedule_from_flags = [&](const std::string& xt) {
            Schedule sched;
            sched.x = parse_x(xt);
            if (!schedule.empty()) {
                if (!kr.empty() || !ks.empty()) throw DomainError("--schedule excludes --r/--s");
                sched.kind = schedule == "t1" ? ScheduleKind::theorem1 : ScheduleKind::theorem2;
                if (sched.kind == ScheduleKind::theorem1) {
                    if (cu.empty()) throw DomainError("--schedule t1 needs --u");
                    sched.u = parse_real(cu, "u");
                }
            } else {
                if (kr.empty() || ks.empty()) throw DomainError("give --schedule t1|t2 or both --r and --s");
                sched.kind = ScheduleKind::manual;
                sched.r = parse_natural(kr);
                sched.s = parse_natural(ks);
            }
            return sched;
        };

        if (nc_check->parsed()) {
            const std::uint64_t n = parse_natural(check_n);
            NovakVerdict verdict;
            if (oracle == "definition") {
                verdict = is_nc_definition(n);
            } else if (oracle == "lambda") {
                if (n == 0) throw DomainError("n must be positive");
                g.budget.require((n / 2 + 1) * sizeof(std::uint32_t), "factor table");
                const FactorTable table = build_factor_table(std::max<std::uint64_t>(n, 2), g.budget);
                const std::uint64_t lambda = carmichael_lambda(n, table);
                verdict = is_nc_criterion(n, table);
                if (g.format == Format::json) {
                    nlohmann::ordered_json j = to_json(verdict);
                    j["lambda"] = lambda;
                    out << j.dump() << '\n';
                } else {
                    out << (n % lambda == 0 ? "true" : "false") << " (lambda " << lambda << ")\n";
                }
                return kOk;
            } else {
                const PrimeTable primes = sieve_primes(std::max<std::uint64_t>(2, isqrt(n)),
                                                       SieveOptions{kDefaultSegmentSize, g.budget});
                verdict = is_nc_criterion(n, primes);
            }
            if (g.format == Format::json) {
                out << to_json(verdict).dump() << '\n';
            } else {
                out << (verdict.is_nc ? "true" : "false");
                if (verdict.witness) {
                    if (const auto* p = std::get_if<PrimeWitness>(&*verdict.witness))
                        out << " (witness prime " << p->prime << ")";
                    else
                        out << " (witness base " << std::get<BaseWitness>(*verdict.witness).base << ")";
                }
                out << '\n';
            }
            return kOk;
        }

        if (nc_count->parsed() || nc_list->parsed()) {
            const bool listing = nc_list->parsed();
            const std::uint64_t x = parse_natural(listing ? list_limit : count_limit);
            std::optional<FactorTable> table;
            if (monolithic) table = build_factor_table(std::max<std::uint64_t>(x, 2), g.budget);
            if (!listing) {
                const std::uint64_t c = table ? count_nc(x, *table) : count_nc_segmented(x);
                emit_count(out, g.format, {{"x", x}}, "count", c);
                return kOk;
            }
            const auto members = table ? list_nc(x, *table) : list_nc_segmented(x);
            if (g.format == Format::json) {
                out << nlohmann::ordered_json(members).dump() << '\n';
            } else {
                for (const auto m : members) out << m << '\n';
            }
            return kOk;
        }

        if (psi->parsed()) {
            const std::uint64_t x = parse_natural(sx), y = parse_natural(sy);
            emit_count(out, g.format, {{"x", x}, {"y", y}}, "psi", psi_count_segmented(x, y));
            return kOk;
        }
        if (pi->parsed()) {
            const std::uint64_t x = parse_natural(sx), y = parse_natural(sy);
            emit_count(out, g.format, {{"x", x}, {"y", y}}, "pi_smooth", pi_smooth_count_segmented(x, y));
            return kOk;
        }
        if (rho->parsed()) {
            const double u = parse_real(su, "u");
            const double v = dickman_rho(u);
            if (g.format == Format::json)
                out << nlohmann::ordered_json{{"u", u}, {"rho", v}}.dump() << '\n';
            else if (g.format == Format::csv)
                out << "u,rho\n" << format_real(u) << ',' << format_real(v) << '\n';
            else
                out << format_real(v) << '\n';
            return kOk;
        }
        if (hild->parsed()) {
            const auto rows = hildebrand_report(parse_z_values(hz));
            if (g.format == Format::json) {
                auto arr = nlohmann::ordered_json::array();
                for (const auto& r : rows)
                    arr.push_back({{"z", r.z}, {"y", r.y}, {"psi", r.psi_count}, {"exponent", round_significant(r.exponent)}});
                out << arr.dump() << '\n';
            } else {
                out << "z,y,psi,exponent\n";
                for (const auto& r : rows) out << r.z << ',' << r.y << ',' << r.psi_count << ',' << format_real(r.exponent) << '\n';
            }
            return kOk;
        }

        if (conj->parsed()) {
            const auto zs = parse_z_values(cz);
            const YRule rule = parse_y_rule(y_rule);
            const std::uint64_t zmax = std::max<std::uint64_t>(2, *std::max_element(zs.begin(), zs.end()));
            const PrimeTable primes = sieve_primes(zmax, SieveOptions{kDefaultSegmentSize, g.budget});
            const FactorTable table = build_factor_table(zmax, g.budget);
            const auto rows = conjecture_table(zs, rule, primes, table);
            if (g.format == Format::json) {
                out << conjecture_json(rows).dump() << '\n';
            } else if (g.format == Format::csv) {
                out << conjecture_csv(rows);
            } else {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%14s %10s %12s %12s %14s %16s %16s\n", "z", "y", "pi", "pi_smooth",
                              "psi", "lhs_ratio", "rhs_ratio");
                out << buf;
                for (const auto& r : rows) {
                    std::snprintf(buf, sizeof buf, "%14llu %10llu %12llu %12llu %14llu %16.12g %16.12g\n",
                                  (unsigned long long)r.z, (unsigned long long)r.y, (unsigned long long)r.pi_count,
                                  (unsigned long long)r.pi_smooth_count, (unsigned long long)r.psi_count,
                                  r.lhs_ratio, r.rhs_ratio);
                    out << buf;
                }
            }
            return kOk;
        }

        if (construct->parsed()) {
            const std::uint64_t r = parse_natural(cr), s = parse_natural(cs);
            if (r < 2 || r > s) throw DomainError("construct needs 2 <= r <= s");
            const PrimeTable primes = sieve_primes(s, SieveOptions{kDefaultSegmentSize, g.budget});
            const FactorTable table = build_factor_table(s, g.budget);
            const ShiftedSmoothSet pset = shifted_smooth_set(s, r, primes, table);
            const ConstructionBase base = build_base(s, r, primes);

            std::vector<std::vector<std::uint64_t>> subsets;
            if (all_subsets) {
                if (pset.count() > 20) throw ResourceError("--all needs Pi(s,r) <= 20");
                for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pset.count()); ++mask) {
                    std::vector<std::uint64_t> sub;
                    for (std::uint64_t i = 0; i < pset.count(); ++i)
                        if (mask >> i & 1) sub.push_back(pset.members[i]);
                    subsets.push_back(std::move(sub));
                }
            } else {
                subsets.push_back(parse_prime_list(subset_text));
            }

            std::vector<FamilyMember> members;
            for (auto& sub : subsets) members.push_back(build_member(base, sub, pset));
            if (!verify_lemma3(base, pset, subsets, table))
                throw DomainError("constructed member failed the prime-divisor check");

            if (g.format == Format::json) {
                if (members.size() == 1) {
                    out << to_json(members.front()).dump() << '\n';
                } else {
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& m : members) arr.push_back(to_json(m));
                    out << arr.dump() << '\n';
                }
            } else if (g.format == Format::csv) {
                out << "D,subset,E\n";
                for (const auto& m : members) {
                    out << base.value.get_str() << ",\"";
                    for (std::size_t i = 0; i < m.subset.size(); ++i) out << (i ? "," : "") << m.subset[i];
                    out << "\"," << m.value.get_str() << '\n';
                }
            } else {
                for (const auto& m : members) out << m.value.get_str() << '\n';
            }
            return kOk;
        }

        if (certify->parsed()) {
            const Schedule sched = schedule_from_flags(x_text);
            const CertifyOptions options{g.budget};
            const LowerBoundCertificate cert = certify_lower_bound(sched, options);
            const nlohmann::ordered_json doc = to_json(cert);
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                if (!file) throw DomainError("cannot write " + out_path);
                file << doc.dump(2) << '\n';
            }
            std::optional<EnumerationResult> enumeration;
            if (enumerate) {
                err << "enumerating " << cert.count.get_str() << " members\n";
                enumeration = enumerate_certificate(cert, options);
            }
            if (g.format == Format::json) {
                nlohmann::ordered_json j = doc;
                if (enumeration) {
                    j["enumeration"] = {{"members", enumeration->members},
                                        {"within_x", enumeration->within_x},
                                        {"distinct", enumeration->distinct},
                                        {"nc_valid", enumeration->nc_valid}};
                }
                out << j.dump() << '\n';
            } else {
                out << plain_certificate(cert);
                if (enumeration) {
                    out << "enumerated        " << enumeration->members << " members: "
                        << (enumeration->sound() ? "all distinct, <= x, criterion holds" : "FAILED") << '\n';
                }
            }
            if (enumeration && !enumeration->sound()) return kVerificationMismatch;
            return kOk;
        }

        if (report->parsed()) {
            std::vector<std::string> xs;
            std::stringstream ss(rx);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) xs.push_back(item);
            if (xs.empty()) throw DomainError("report needs at least one x");
            const Schedule proto = schedule_from_flags(xs.front());
            const auto rows = theorem_exponent_report(xs, proto.kind, proto.u, proto.r, proto.s, CertifyOptions{g.budget});
            if (g.format == Format::json) {
                auto arr = nlohmann::ordered_json::array();
                for (const auto& r : rows) {
                    nlohmann::ordered_json j = {{"x", r.x}, {"feasible", r.feasible}, {"r", r.r}, {"s", r.s}, {"A", r.A},
                                        {"log10_count", r.log10_count}};
                    j["exponent"] = r.exponent ? nlohmann::ordered_json(round_significant(*r.exponent)) : nlohmann::ordered_json(nullptr);
                    j["target"] = r.target ? nlohmann::ordered_json(*r.target) : nlohmann::ordered_json(nullptr);
                    arr.push_back(j);
                }
                out << arr.dump() << '\n';
            } else {
                out << "x,feasible,r,s,A,log10_count,exponent,target\n";
                for (const auto& r : rows) {
                    out << r.x << ',' << (r.feasible ? "yes" : "infeasible") << ',' << r.r << ',' << r.s << ','
                        << r.A << ',' << format_real(r.log10_count) << ','
                        << (r.exponent ? format_real(*r.exponent) : "") << ','
                        << (r.target ? format_real(*r.target) : "") << '\n';
                }
            }
            return kOk;
        }

        if (verify->parsed()) {
            std::ifstream file(cert_path);
            if (!file) throw DomainError("cannot read " + cert_path);
            nlohmann::ordered_json doc;
            try {
                doc = nlohmann::ordered_json::parse(file);
            } catch (const nlohmann::ordered_json::exception& e) {
                throw DomainError(std::string("malformed certificate JSON: ") + e.what());
            }
            const VerifyReport rep = verify_certificate(doc, CertifyOptions{g.budget});
            for (const auto& m : rep.mismatches) err << "mismatch: " << m << '\n';
            if (g.format == Format::json)
                out << nlohmann::ordered_json{{"ok", rep.ok()}, {"mismatches", rep.mismatches}}.dump() << '\n';
            else
                out << (rep.ok() ? "ok" : "MISMATCH") << '\n';
            return rep.ok() ? kOk : kVerificationMismatch;
        }
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kResourceError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kDomainError;
}

}  // namespace ncforge::cli
