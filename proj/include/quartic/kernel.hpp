#pragma once

#include "quartic/params.hpp"

namespace quartic::kernel {

/// K(x, y, z) = L exp(s xyz) Ai((L/2)(x^2 + y^2 + z^2) + a/L^2),
/// L = lambda^{1/3}, s = sqrt(lambda/2).
///
/// Arguments are put in canonical order (sorted magnitudes, sign carried by
/// the product) before evaluation, so the value is bit-identical under any
/// permutation and under flipping the sign of two arguments.
double kernel_eval(const PotentialParams& params, double x, double y, double z);

/// K and its first two partial derivatives in x, computed analytically.
struct XDerivatives {
    double value;
    double d1;
    double d2;
};
XDerivatives kernel_x_derivatives(const PotentialParams& params, double x, double y, double z);

/// d^n K / dx^n for n <= 2.
double kernel_x_derivative(const PotentialParams& params, int n, double x, double y, double z);

/// Natural log of |d^n K / dx^n|; finite far beyond the range where the
/// value itself underflows. Returns -inf where the derivative vanishes.
double log_abs_x_derivative(const PotentialParams& params, int n, double x, double y, double z);

/// Finite-difference residuals of H(x)K - H(y)K and H(x)K - H(z)K with
/// H(t) = -d^2/dt^2 + a t^2 + (lambda/2) t^4 and five-point second differences.
struct PdeResidual {
    double r_xy;
    double r_xz;
    double scale;  // largest magnitude among the compared terms
};
PdeResidual check_pde_identity(const PotentialParams& params, double x, double y, double z,
                               double h);

/// Exponent c in the envelope exp(-c r^3): (2 rho/3) sqrt(lambda/8), which is
/// 2 rho/3 for the lambda = 8 kernel.
double decay_rate(const PotentialParams& params, double rho);

/// Pointwise bound C exp(-c (x^2 + z^2)^{3/2}) on |d^n K/dx^n| at fixed y, with
/// c = decay_rate(params, rho).
class DecayEnvelope {
public:
    DecayEnvelope(PotentialParams params, double y, double rho, int n, double C, double r_fit);

    const PotentialParams& params() const noexcept { return params_; }
    double y() const noexcept { return y_; }
    double rho() const noexcept { return rho_; }
    int n() const noexcept { return n_; }
    double C() const noexcept { return C_; }
    double rate() const noexcept;
    /// Outer radius of the fitting grid.
    double r_fit() const noexcept { return r_fit_; }

    double operator()(double x, double z) const;
    double log_bound(double x, double z) const;

    /// Smallest R with C exp(-c R^3) <= eps.
    double truncation_radius(double eps) const;

    /// Bound on int_{|z| > R} |f(z)| C exp(-c (x^2 + z^2)^{3/2}) dz
    /// for |f| <= sup_f.
    double tail_bound(double R, double sup_f) const;

private:
    PotentialParams params_;
    double y_;
    double rho_;
    int n_;
    double C_;
    double r_fit_;
};

/// Fit C on a polar grid in the (x, z) plane (64 angles, radius out to at
/// least 8 and beyond until the weighted derivative has clearly peaked),
/// refine the largest samples locally, and inflate by a safety factor of 2.
/// Requires rho in (0, 1) and n <= 2.
DecayEnvelope decay_envelope(const PotentialParams& params, double y, double rho, int n);

}  // namespace quartic::kernel
