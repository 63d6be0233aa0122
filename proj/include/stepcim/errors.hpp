#pragma once

#include <stdexcept>
#include <string>

namespace stepcim {

// Every failure the library reports derives from Error so front ends can map
// the category onto an exit status without string matching.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a model equation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Device geometry violating a structural rule (e.g. nail not smaller than hammer).
class GeometryError : public Error {
public:
    using Error::Error;
};

// Caller violated an operation precondition (e.g. sense bias above coercive voltage).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Bias combination the compact model does not support.
class BiasError : public Error {
public:
    using Error::Error;
};

// Transient integration step too coarse for the switching time constant.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// Stored state that the encoder can never produce.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

// More operands than the hardware can activate at once.
class CapacityError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// A calibration anchor cannot be met; the message names the binding constraint.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace stepcim
