#pragma once

#include <stdexcept>
#include <string>

namespace dpmod {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments: modulus mismatch, non-prime modulus, insufficient
/// generator coverage, inadmissible level.
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed polynomial, operator, element or sequence-file text.
class ParseError : public InputError {
public:
    using InputError::InputError;
};

/// A closed formula evaluated outside the range where it is an integer.
class FormulaUndefinedError : public InputError {
public:
    using InputError::InputError;
};

/// Exponent or integer arithmetic would overflow 64 bits.
class RangeError : public Error {
public:
    using Error::Error;
};

}  // namespace dpmod
