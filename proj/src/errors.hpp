#pragma once

#include <stdexcept>
#include <string>

namespace rangewalk {

// Argument outside the mathematical domain of an operation (e.g. g(2), z on
// the absorbing boundary for an exit pmf).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid input (violated type invariant).
class invalid_argument : public std::invalid_argument {
public:
    explicit invalid_argument(const std::string& what) : std::invalid_argument(what) {}
};

// Work or memory beyond the configured budget. Carries the budget that would
// have been required so callers can decide to retry.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, long long required)
        : std::runtime_error(what), required_budget(required) {}
    long long required_budget;
};

} // namespace rangewalk
