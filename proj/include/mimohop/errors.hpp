#pragma once

#include <stdexcept>
#include <string>

namespace mimohop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A closed-form approximation was evaluated outside its validity region.
class EvalError : public Error {
public:
    using Error::Error;
};

/// The Gaussian outage model predicts the target is met at non-positive SNR (k <= 0).
class InfeasibleAtZeroPower : public Error {
public:
    using Error::Error;
};

/// Path-efficiency factor 1 - a*phi^2*(n-1)/(24n) is not positive.
class InvalidGeometry : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A theorem's hypothesis does not hold for the requested parameters.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace mimohop
