#pragma once

#include <stdexcept>
#include <string>

namespace hfc {

// Error taxonomy shared by all modules. Each maps to a distinct failure class.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct TruncationError : std::runtime_error {
    TruncationError(const std::string& what, double measured)
        : std::runtime_error(what), tail(measured) {}
    double tail;
};

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, int iters)
        : std::runtime_error(what), iterations(iters) {}
    int iterations;
};

}  // namespace hfc
