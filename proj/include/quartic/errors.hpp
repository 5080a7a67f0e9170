#pragma once

#include <stdexcept>
#include <string>

namespace quartic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (non-finite input, unsupported argument range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A tolerance, order or other tuning parameter is out of its allowed range.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Internal bookkeeping went wrong (off-grid exponent, truncated window).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// No eigenvalue bracket could be established.
class BracketingError : public Error {
public:
    BracketingError(const std::string& what, int k, double lo, double hi)
        : Error(what), k_(k), lo_(lo), hi_(hi) {}

    int k() const noexcept { return k_; }
    double scan_lo() const noexcept { return lo_; }
    double scan_hi() const noexcept { return hi_; }

private:
    int k_;
    double lo_;
    double hi_;
};

/// The ODE integrator could not meet its tolerance.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double suggested_step)
        : Error(what), suggested_step_(suggested_step) {}

    double suggested_step() const noexcept { return suggested_step_; }

private:
    double suggested_step_;
};

/// Adaptive quadrature hit its subdivision limit. Carries the best estimate.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_value, double best_error)
        : Error(what), best_value_(best_value), best_error_(best_error) {}

    double best_value() const noexcept { return best_value_; }
    double best_error() const noexcept { return best_error_; }

private:
    double best_value_;
    double best_error_;
};

}  // namespace quartic
