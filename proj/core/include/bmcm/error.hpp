#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bmcm {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed model template text. `position` is a 0-based character offset
/// into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position(position) {}

    std::size_t position;
};

/// Bad dataset input: CSV defects, unknown columns, invalid sizes.
class DataError : public Error {
public:
    using Error::Error;
};

/// Combinatorial blowup guard (too many operator slots to enumerate).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Statistical operation undefined for the given input (empty test,
/// degenerate table, negative statistic, unsupported dof).
class StatsError : public Error {
public:
    using Error::Error;
};

/// Trial engine failures (e.g. a slot with no faithful trials).
class EngineError : public Error {
public:
    using Error::Error;
};

/// Step-1 gate conditions: gate inapplicable or not passed.
class GateError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or argument values.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace bmcm
