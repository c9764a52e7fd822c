#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError / ParseError            -> 1 (bad input, bad usage)
//   TruncationError, DegeneratePairError -> 2 (no certified result possible)
//   InternalError                       -> 3 (broken internal invariant)
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Input-file syntax problem, with a line number for diagnostics.
class ParseError : public ConfigError {
public:
    ParseError(int line, const std::string& what)
        : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Raised whenever a result would depend on eigenvalues beyond a factor's
// truncation_bound. Carries the factor name and the bound that would be needed.
class TruncationError : public Error {
public:
    TruncationError(std::string factor, std::string required_bound)
        : Error("truncation insufficient: " + factor + " requires truncation_bound >= " +
                required_bound),
          factor_(std::move(factor)),
          required_bound_(std::move(required_bound)) {}

    const std::string& factor() const { return factor_; }
    const std::string& required_bound() const { return required_bound_; }

private:
    std::string factor_;
    std::string required_bound_;
};

// The pair of factor metrics is degenerate: some branch is identically zero,
// the operator family is singular for every s, and no instant list is meaningful.
class DegeneratePairError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace yamabe
