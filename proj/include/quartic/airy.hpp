#pragma once

#include <vector>

namespace quartic::airy {

/// First zero of Ai, to the ten digits used throughout the library.
inline constexpr double FIRST_ZERO = -2.3381074105;

/// Above this argument Ai is evaluated from its asymptotic expansion.
inline constexpr double CROSSOVER = 6.0;

/// Below -NEGATIVE_LIMIT the Maclaurin series is summed in quad precision only.
inline constexpr double NEGATIVE_LIMIT = 9.0;

/// Default evaluation tolerance used by callers that do not pass one.
inline constexpr double DEFAULT_TOL = 1e-14;

struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    double ai_prime = 0.0;
    double abs_error_bound = 0.0;
};

/// Ai(x) and Ai'(x) with a certified absolute error bound <= tol.
/// Throws DomainError for non-finite x (or when cancellation at large
/// negative x prevents certifying the tolerance) and ConfigurationError for tol outside
/// [1e-14, 1e-4].
AiryValue ai(double x, double tol = DEFAULT_TOL);

/// Ai and Ai' with the factor exp(-(2/3) x^{3/2}) removed for x > 0:
/// Ai(x) = exp(-log_scale) * ai, Ai'(x) = exp(-log_scale) * ai_prime.
/// For x <= 0 log_scale is zero. Relative accuracy is kept far into the
/// decaying region where Ai itself underflows.
struct ScaledAiry {
    double ai = 0.0;
    double ai_prime = 0.0;
    double log_scale = 0.0;
    double rel_error = 0.0;  // relative accuracy estimate of ai (and ai_prime)
};
ScaledAiry ai_scaled(double x);

/// Branch-level evaluators, exposed for crossover and consistency checks.
/// Both return unscaled values with their own error bounds.
AiryValue ai_series(double x);
AiryValue ai_asymptotic(double x);

/// Gamma(n + 1/2) / sqrt(pi) = (2n)! / (4^n n!), a dyadic rational.
double gamma_half_ratio(int n);

/// Gamma(n + 1/2), exact up to the rounding of sqrt(pi).
double gamma_half(int n);

/// The moment integral  int_0^inf Ai(t + X) t^{n - 1/2} dt.
struct MomentValue {
    double value = 0.0;
    double error_estimate = 0.0;
    bool closed_form = false;
};

/// Highest order evaluated in closed form; larger n use quadrature.
inline constexpr int MAX_CLOSED_FORM_ORDER = 12;

/// Evaluate the moment in closed form (Ai^2 at X / 2^{2/3} with the Airy
/// operator (d^2/dX^2 - X) applied n times) for n <= MAX_CLOSED_FORM_ORDER,
/// falling back to direct quadrature for larger n or when the closed form
/// cannot meet tol.
MomentValue phi_n_eval(int n, double X, double tol);

double phi_n(int n, double X, double tol);

/// Direct adaptive quadrature of the moment integral, truncated with the
/// leading-order asymptotic envelope of Ai.
MomentValue phi_n_quadrature(int n, double X, double tol);

/// Coefficients (alpha, beta, gamma) of the closed form
///   alpha(X) Ai(u)^2 + beta(X) Ai(u) Ai'(u) + gamma(X) Ai'(u)^2,  u = X / 2^{2/3}
/// as ascending polynomial coefficient lists.
struct QuadraticForm {
    // index i holds the coefficient of X^i
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
};
QuadraticForm moment_closed_form(int n);

}  // namespace quartic::airy
