#pragma once

#include <stdexcept>
#include <string>

namespace lyapsft {

// Base of every error raised by the library. The CLI maps the concrete
// type onto an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed arguments: out-of-range symbols, non-positive lengths, unsorted inputs.
class InputError : public Error {
public:
    using Error::Error;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A configured combinatorial cap was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Stochastic matrix is reducible where irreducibility is required.
class ErgodicityError : public Error {
public:
    using Error::Error;
};

// Structural validation of a measure, potential or system failed.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Floating-point result could not be trusted (root count mismatch, det drift).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Two computations that must agree did not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lyapsft
