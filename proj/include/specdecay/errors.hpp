#pragma once

#include <stdexcept>

namespace specdecay {

/// Rejected user-supplied configuration; the CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Violated internal numerical guarantee; the CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace specdecay
