#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqsf {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Expression text could not be parsed. `position` is a 0-based byte offset
// into the input pointing at the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Evaluation left an expression's domain (division by zero, log of zero).
class EvalDomainError : public Error {
public:
    using Error::Error;
};

// |g'| vanishes, so the Gauss map is not an immersion of the parameter plane.
class SingularGaussMap : public Error {
public:
    using Error::Error;
};

// f1 f2' - f2 f1' vanishes (at a point, or identically as a function).
class DegenerateWronskian : public Error {
public:
    using Error::Error;
};

// The regularity factor P = A1 A2 - T^2 V12^2 vanishes at the point.
class DegeneratePoint : public Error {
public:
    using Error::Error;
};

// Output destination could not be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace hqsf
