#pragma once

#include <stdexcept>
#include <string>

namespace scalevar {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An evaluation stencil or query point left the domain of a curve.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An argument violates its contract (non-positive eps, bad schedule, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Expression text could not be parsed; carries a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Expression evaluation hit an undefined value (division by zero, log 0, ...).
class EvalError : public Error {
public:
    using Error::Error;
};

/// A structurally valid request the engine cannot honor (e.g. differentiating
/// through abs with respect to a variable occurring inside it).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A caller-facing precondition failed (boundary values, constraint setup).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The constraint residual field is numerically zero, so no multiplier exists.
class DegenerateConstraintError : public Error {
public:
    using Error::Error;
};

}  // namespace scalevar
