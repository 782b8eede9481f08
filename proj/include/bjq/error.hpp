#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bjq {

/// Precondition or argument violation. Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite intermediate. Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values reached a container. Still a ValidationError for library callers;
/// the CLI reports it as a numeric failure since its file inputs are checked on read.
class NonFiniteError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed input file; carries the byte offset where parsing failed.
class FormatError : public ValidationError {
public:
    FormatError(const std::string& what, std::size_t offset)
        : ValidationError(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

}  // namespace bjq
