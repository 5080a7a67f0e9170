#pragma once

#include "quartic/oscillator.hpp"
#include "quartic/params.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quartic::verify {

enum class Identity {
    product_formula,
    integral_equation,
    kernel_expansion,
    asymptotic_expansion,
    pde_identity,
    scaling,
};

std::string_view to_string(Identity id);
/// Accepts the enum spelling; throws ConfigurationError otherwise.
Identity identity_from_string(std::string_view name);

/// One compared pair. `input` holds the coordinates named by the report's
/// input_names; `reference` is an identity-specific magnitude (the first
/// omitted term for expansions, the stencil scale for PDE checks).
struct ResidualRow {
    std::string label;
    std::vector<double> input;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double quad_error = 0.0;
    double reference = 0.0;
};

struct QuadratureMeta {
    double max_error_estimate = 0.0;
    double max_truncation_bound = 0.0;
    std::size_t evaluations = 0;
    double rho = 0.0;
};

struct VerificationReport {
    Identity identity = Identity::product_formula;
    PotentialParams params{0.0, 8.0};
    std::map<std::string, double> inputs;
    std::vector<std::string> input_names;
    std::vector<ResidualRow> rows;
    double tolerance = 0.0;
    bool passed = false;
    QuadratureMeta quadrature;
    /// median(rhs / lhs) over rows with |lhs| > 1e-8 sup psi^2 (product formula only).
    std::optional<double> fitted_constant;
};

/// Denominator floor of the relative residual.
inline constexpr double RELATIVE_FLOOR = 1e-10;

/// |lhs - rhs| / max(|lhs|, |rhs|, RELATIVE_FLOOR)
double relative_residual(double lhs, double rhs);

/// Envelope decay rate used for quadrature truncation at this tolerance.
double envelope_rho(double tol);

/// Tolerance handed to the eigensolver when a verification solves its own states.
double solver_tol(double tol);

/// psi_k(x) psi_k(y) against int psi_k(z) K(x, y, z) dz for each (x, y).
VerificationReport verify_product_formula(const EigenState& state,
                                          const std::vector<std::pair<double, double>>& points,
                                          double tol);
VerificationReport verify_product_formula(const PotentialParams& params, int k,
                                          const std::vector<std::pair<double, double>>& points,
                                          double tol);

/// Even states: psi(0) psi(y) = 2L int_0^inf psi(z) Ai((L/2)(y^2 + z^2) + a/L^2) dz.
/// Odd states: psi'(0) psi(y) = 2 L s y int_0^inf psi(z) z Ai(...) dz.
VerificationReport verify_integral_equation(const EigenState& state, const std::vector<double>& ys,
                                            double tol);
/// Solves k = 2m (even) or k = 2m + 1 (odd).
VerificationReport verify_integral_equation(const PotentialParams& params, int m, Parity parity,
                                            const std::vector<double>& ys, double tol);

/// sum_{k < K_terms} psi_k(x) psi_k(y) psi_k(z) / |psi_k|^2 and its
/// relative deviation from the kernel.
struct ExpansionValue {
    double value;
    double kernel;
    double residual;  // |value - kernel| / max(|kernel|, RELATIVE_FLOOR)
};
ExpansionValue kernel_expansion_partial_sum(const std::vector<EigenState>& states, int K_terms,
                                            double x, double y, double z);
ExpansionValue kernel_expansion_partial_sum(const PotentialParams& params, int K_terms, double x,
                                            double y, double z, double tol);

/// Report over points for a fixed number of terms.
VerificationReport verify_kernel_expansion(const std::vector<EigenState>& states, int K_terms,
                                           const std::vector<std::array<double, 3>>& points,
                                           double tol);

/// psi^{(j)}(0) / j! for j = 0..order from the Taylor recursion of the
/// eigenvalue equation, started from psi(0), psi'(0) and E.
std::vector<double> taylor_coefficients(const EigenState& state, int order);

/// Moment expansion of psi_k(y) in phi_n(y^2 + a/4) truncated after N + 1
/// terms, with the first omitted term.
struct ExpansionTerms {
    double partial_sum;
    double next_term;
};
ExpansionTerms asymptotic_partial_sum(const EigenState& state, int N, double y);

/// Compare psi_k(y) against the moment expansion with N + 1 terms. Requires
/// lambda = 8 exactly; scale other parameters with scale_state first.
VerificationReport asymptotic_expansion_check(const EigenState& state, int N,
                                              const std::vector<double>& ys, double tol);
VerificationReport asymptotic_expansion_check(const PotentialParams& params, int k, int N,
                                              const std::vector<double>& ys, double tol);

/// psi(a, lambda; x) against beta^{1/6} psi(scaled; beta^{1/6} x) with both
/// states solved independently, plus the energy relation.
VerificationReport verify_scaling(const PotentialParams& params, int k, double beta,
                                  const std::vector<double>& xs, double tol);

/// Kernel PDE residuals at step h, normalised by the stencil scale.
VerificationReport verify_pde_identity(const PotentialParams& params,
                                       const std::vector<std::array<double, 3>>& points, double h,
                                       double tol);

}  // namespace quartic::verify
