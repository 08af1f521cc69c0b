#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esib {

// Base for all library errors. The CLI maps subtypes onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression text; `pos` is the byte offset of the offending token.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), pos(pos) {}
    std::size_t pos;
};

struct EvalError : Error {
    enum class Kind { DivisionByZero, UnboundSlot, NonFinite };
    EvalError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
    Kind kind;
};

// Truncated or overlong pre-order sequence.
struct ArityError : Error {
    using Error::Error;
};

// More quantities in a problem than the configured slot capacity.
struct CapacityError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Majority of corpus records failed validation.
struct CorpusFormatError : Error {
    using Error::Error;
};

// Predictions and gold problems do not line up.
struct AlignmentError : Error {
    using Error::Error;
};

// Decoder stack discipline violated (merge/pop misuse).
struct StateError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

// Non-finite loss or other numeric breakdown during training.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace esib
