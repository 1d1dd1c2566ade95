#pragma once

#include <stdexcept>
#include <string>

namespace asc {

/// Bad or missing input data (files, malformed cells, shape mismatches).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (degenerate covariance, non-convergence, zero denominators).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration (bad grid step, out-of-range parameters).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace asc
