// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace volest {

/// Invalid argument or violated precondition on a library operation.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed or unreadable input data (CSV files, misaligned series).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical procedure failed (non-convergence, degenerate system).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace volest
