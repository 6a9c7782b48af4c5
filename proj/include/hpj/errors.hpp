#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hpj {

// Argument outside an operation's domain (index out of range, x <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed instance or experiment configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested path does not fit on the expanded gray-code path.
class CapacityError : public std::length_error {
public:
    CapacityError(const std::string& what, std::uint64_t max_length)
        : std::length_error(what), max_length_(max_length) {}

    std::uint64_t max_feasible_length() const noexcept { return max_length_; }

private:
    std::uint64_t max_length_;
};

} // namespace hpj
