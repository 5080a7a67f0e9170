#pragma once

#include "quartic/airy.hpp"
#include "quartic/errors.hpp"

#include <cmath>
#include <string>

namespace quartic {

/// Parameters (a, lambda) of the quartic oscillator
///   H(a, lambda) = -d^2/dx^2 + a x^2 + (lambda/2) x^4,   lambda > 0.
/// Derived quantities are recomputed on demand, never stored.
class PotentialParams {
public:
    PotentialParams(double a, double lambda) : a_(a), lambda_(lambda) {
        if (!std::isfinite(a)) throw ConfigurationError("parameter a must be finite");
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
            throw ConfigurationError("parameter lambda must be positive and finite, got " +
                                     std::to_string(lambda));
        }
    }

    double a() const noexcept { return a_; }
    double lambda() const noexcept { return lambda_; }

    /// Shift in the Airy argument of the lambda = 8 kernel.
    double b() const noexcept { return a_ / 4.0; }

    /// Kernel positivity holds for a above this value.
    double positivity_threshold() const noexcept {
        return std::cbrt(lambda_ * lambda_) * airy::FIRST_ZERO;
    }

    /// sqrt(lambda / 2), the coefficient scale of the x^3 decay exponent.
    double root_half_lambda() const noexcept { return std::sqrt(0.5 * lambda_); }

    double potential(double x) const noexcept {
        const double x2 = x * x;
        return a_ * x2 + 0.5 * lambda_ * x2 * x2;
    }

    double potential_minimum() const noexcept {
        return a_ < 0.0 ? -a_ * a_ / (2.0 * lambda_) : 0.0;
    }

    /// Parameters after (a, lambda) -> (beta^{-2/3} a, beta^{-1} lambda).
    PotentialParams scaled(double beta) const {
        if (!(beta > 0.0)) throw ConfigurationError("scaling factor beta must be positive");
        return {a_ * std::pow(beta, -2.0 / 3.0), lambda_ / beta};
    }

    friend bool operator==(const PotentialParams&, const PotentialParams&) = default;

private:
    double a_;
    double lambda_;
};

}  // namespace quartic
