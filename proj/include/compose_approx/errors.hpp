#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compose_approx {

/// Precondition violated by the caller (bad length, bad range, bad flag).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Expression text could not be parsed; carries the byte offset of the failure.
class ParseError : public ArgumentError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : ArgumentError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// An enumeration or grid would exceed a configured cap.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Elementary function evaluated outside its domain (log of a non-positive value, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A sampled value was not finite, or a numerical routine broke down.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Remez alternation system could not be solved for the current reference.
class SingularSystemError : public EvaluationError {
public:
    using EvaluationError::EvaluationError;
};

}  // namespace compose_approx
