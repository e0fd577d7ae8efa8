#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ncforge::cli {

enum ExitCode : int {
    kOk = 0,
    kDomainError = 1,
    kResourceError = 2,
    kVerificationMismatch = 3,
};

// args excludes the program name. Results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "100", "10^7", "2^20": an exact natural below 2^64.
std::uint64_t parse_natural(const std::string& text);

// "a,b,c" or "lo:hi:step" (arithmetic) or "lo:hi:*f" (geometric).
std::vector<std::uint64_t> parse_z_values(const std::string& text);

}  // namespace ncforge::cli
