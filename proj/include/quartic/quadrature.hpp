#pragma once

#include <cstddef>
#include <functional>

namespace quartic::quadrature {

using Integrand = std::function<double(double)>;

/// Upper bound on the integral of |f| outside [-R, R] (full line) or beyond R
/// (half line), as a function of the truncation radius R.
using TailBound = std::function<double(double)>;

enum class Domain { half_line, full_line };

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;    // discretisation error on the truncated domain
    double truncation_bound = 0.0;  // certified bound on the discarded tails
    std::size_t evaluations = 0;
    double radius = 0.0;            // truncation radius actually used
};

struct Options {
    std::size_t max_subintervals = 5000;
    int initial_pieces = 8;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to absolute
/// tolerance tol. Subintervals are refined largest-error first.
QuadratureResult integrate_interval(const Integrand& f, double a, double b, double tol,
                                    const Options& opts = {});

/// Tail threshold used for truncation whenever tol is larger.
inline constexpr double TRUNCATION_FLOOR = 1e-15;

/// Integrate over the half line [0, inf) or the full line. The domain is
/// truncated at the smallest radius whose tail bound is below
/// min(tol, TRUNCATION_FLOOR)/4; 3/4 of tol goes to the discretisation error.
///
/// Full-line integrals are folded onto [0, R] as f(t) + f(-t), so odd
/// integrands integrate to exactly zero.
QuadratureResult integrate(const Integrand& f, Domain domain, const TailBound& tail,
                           double tol, const Options& opts = {});

/// Same, with an explicit truncation radius supplied by the caller.
/// truncation_bound is reported as zero: the caller owns the tail.
QuadratureResult integrate(const Integrand& f, Domain domain, double radius, double tol,
                           const Options& opts = {});

/// Smallest radius (to relative precision 1e-6) with tail(R) <= eps. The
/// tail bound must be nonincreasing in R.
double truncation_radius(const TailBound& tail, double eps, double start = 1.0);

}  // namespace quartic::quadrature
