#pragma once

#include <stdexcept>
#include <string>

namespace ncforge {

// Invalid argument or out-of-range input. CLI exit code 1.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds the configured memory budget or a supported range. CLI exit code 2.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncforge
