#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extremal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

struct UnsupportedBackend : Error {
    using Error::Error;
};

// A configured search or enumeration cap was hit.
struct CapExceeded : Error {
    using Error::Error;
};

// An internal invariant was breached. Never expected on valid input.
struct SoundnessError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column, std::string token)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column) +
                (token.empty() ? std::string() : " near '" + token + "'")),
          line(line), column(column), token(std::move(token)) {}

    std::size_t line;
    std::size_t column;
    std::string token;
};

}  // namespace extremal
