#pragma once

#include <stdexcept>
#include <string>

namespace thermex {

// Invalid configuration (bad parameter values, unknown keys, malformed
// distributions). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures during execution (I/O, schema mismatches, numerical trouble).
// The CLI maps this (and any other std::exception) to exit code 3.
struct RunError : std::runtime_error {
    explicit RunError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace thermex
