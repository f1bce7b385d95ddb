#pragma once

#include <stdexcept>
#include <string>

namespace ridgeforge {

// Base class for all library failures, so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments: bad shapes, negative shrinkage, malformed spec strings,
// out-of-range coordinates. Maps to CLI exit code 2.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Numeric breakdowns: rank deficiency, non-convergence, undefined minima,
// excessive bootstrap discards. Maps to CLI exit code 3.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Problems with input files: missing, ragged, non-numeric cells, too few
// rows. Maps to CLI exit code 4.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

} // namespace ridgeforge
