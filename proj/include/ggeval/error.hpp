#pragma once

#include <stdexcept>
#include <string>

namespace ggeval {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input; message carries the file/line location.
class ParseError : public Error {
public:
    using Error::Error;
};

// A graph or dataset violates a structural invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Bad configuration: invalid generator/kernel/grid parameters or
// incompatible option combinations.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Numerical failure (eigensolver non-convergence, spectrum overshoot,
// transport solver breakdown).
class NumericError : public Error {
public:
    using Error::Error;
};

// A dependence measure received a constant series. Callers that scan a
// configuration grid catch this and report the cell as missing instead
// of silently writing a zero.
class ConstantSeriesError : public Error {
public:
    using Error::Error;
};

}  // namespace ggeval
