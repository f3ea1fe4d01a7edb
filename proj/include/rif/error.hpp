#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rif {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input (polynomial text, invalid arguments).
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// Mathematical precondition violated (zero polynomial, bad bidegree, pole hit).
class DomainError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed to produce a trustworthy answer.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace rif
