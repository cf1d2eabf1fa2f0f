#pragma once

#include <stdexcept>
#include <string>

namespace farsee {

// Base for all library errors. Subclasses map onto CLI exit codes:
// schema/parameter -> 2, data insufficiency -> 3, prediction impossible -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad CSV header, bad config value, bad report document.
class SchemaError : public Error {
public:
    using Error::Error;
};

// An operation was called with out-of-contract arguments.
class ParameterError : public Error {
public:
    using Error::Error;
};

// The data is structurally fine but too small or degenerate to proceed.
class DataError : public Error {
public:
    using Error::Error;
};

// No applicable rules and the fallback policy forbids a default estimate.
class PredictionError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed; indicates a bug, not user error.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace farsee
