#pragma once

#include <stdexcept>
#include <string>

namespace ehrhart {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed arguments outside an operation's domain.
class InputError : public Error {
public:
    using Error::Error;
};

/// A polytope description violates a structural invariant
/// (affinely dependent simplex, empty interval, ...).
class InvalidPolytope : public InputError {
public:
    using InputError::InputError;
};

/// Malformed PolytopeSpec document. `where()` is either a JSON pointer
/// into the document or a "byte N" position for syntax errors.
class ParseError : public InputError {
public:
    ParseError(std::string where, const std::string& what)
        : InputError(where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// A counting request would enumerate more candidate points than allowed.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Interpolated counts failed to reproduce fresh counts, or the recovered
/// polynomial has the wrong shape for an Ehrhart polynomial.
class NotEhrhartConsistent : public Error {
public:
    using Error::Error;
};

/// The delta transform produced a non-integer entry.
class NotLatticeEhrhart : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace ehrhart
