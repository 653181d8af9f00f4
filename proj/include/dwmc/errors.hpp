#pragma once

#include <stdexcept>
#include <string>

namespace dwmc {

// Error taxonomy used by the CLI to map failures onto exit codes:
// ConfigError -> 2, DataError -> 3, ConvergenceError -> 4.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inputs are structurally valid but degenerate for the requested
// computation (empty class mask, all-zero forces, undefined kappa, ...).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dwmc
