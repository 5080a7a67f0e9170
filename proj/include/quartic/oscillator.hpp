#pragma once

#include "quartic/params.hpp"

#include <utility>
#include <vector>

namespace quartic {

enum class Parity { even, odd };

/// One stored sample of the eigenfunction on [0, X_max], kept in the
/// exponentially rescaled form w = psi * exp((s/3) x^3 + (a/(2s)) x).
struct GridPoint {
    double x;
    double w;
    double dw;
};

/// A solved eigenpair, normalised so that psi ~ x^{-1} exp(-(s/3) x^3 - (a/(2s)) x)
/// as x -> +inf. Immutable once built.
class EigenState {
public:
    /// Assemble a state from its parts. The grid must be ascending from x = 0.
    EigenState(PotentialParams params, int k, double energy, std::vector<GridPoint> grid,
               std::vector<double> tail_coeffs, std::vector<double> log_tail, double tol,
               double norm_sq, double max_abs);

    const PotentialParams& params() const noexcept { return params_; }
    int k() const noexcept { return k_; }
    double energy() const noexcept { return energy_; }
    Parity parity() const noexcept { return k_ % 2 == 0 ? Parity::even : Parity::odd; }
    const std::vector<GridPoint>& grid() const noexcept { return grid_; }
    double x_max() const noexcept { return grid_.back().x; }
    double tol() const noexcept { return tol_; }
    /// B_1..B_N of the large-x series at this energy.
    const std::vector<double>& tail_coeffs() const noexcept { return tail_; }
    /// L_1..L_M with 1 + sum B_n x^{-n/2} = exp(sum L_n x^{-n/2}), truncated
    /// where the initial data at x_max were taken. Used beyond x_max.
    const std::vector<double>& log_tail_coeffs() const noexcept { return log_tail_; }
    /// Squared L2 norm over the real line, computed at construction.
    double norm_sq() const noexcept { return norm_sq_; }
    /// Bound on sup |psi| over the real line.
    double max_abs() const noexcept { return max_abs_; }

    /// w = psi exp(-S) and w' for x >= 0, so that x w -> 1 as x -> inf.
    std::pair<double, double> rescaled(double x) const;

    /// The large-x factor 1 + sum B_n x^{-n/2}, evaluated as exp(sum L_n x^{-n/2}).
    double series_factor(double x) const;

    /// psi(0), psi'(0) read directly from the grid end point.
    double value_at_origin() const noexcept;
    double slope_at_origin() const noexcept;

    /// Exponent S(x) = -(s/3) x^3 - (a/(2s)) x of the asymptotic factor.
    double log_envelope(double x) const noexcept;

private:
    PotentialParams params_;
    int k_ = 0;
    double energy_ = 0.0;
    std::vector<GridPoint> grid_;
    std::vector<double> tail_;
    std::vector<double> log_tail_;
    double tol_ = 0.0;
    double norm_sq_ = 0.0;
    double max_abs_ = 0.0;
};

/// Eigenvalues and eigenfunctions for k = 0..k_max by inward shooting from the
/// large-x series, bracketing by node count and refining to
/// |dE| <= tol (1 + |E|). Requires k_max <= 40 and tol in [1e-12, 1e-6].
std::vector<EigenState> solve_eigenproblem(const PotentialParams& params, int k_max, double tol);

/// Single state; same contract as solve_eigenproblem.
EigenState solve_state(const PotentialParams& params, int k, double tol);

/// psi_k(x) on the whole line (parity extension for x < 0, large-x series
/// beyond x_max).
double eval_eigenfunction(const EigenState& state, double x);

/// psi_k'(x) on the whole line.
double eval_derivative(const EigenState& state, double x);

/// Apply (a, lambda, E, x) -> (beta^{-2/3} a, beta^{-1} lambda, beta^{-1/3} E, beta^{1/6} x),
/// with psi transforming so that psi(x) = beta^{1/6} psi_scaled(beta^{1/6} x).
std::pair<PotentialParams, EigenState> scale_state(const EigenState& state,
                                                   const PotentialParams& params, double beta);

/// Quadrature of psi^2 over the real line to relative tolerance tol.
double norm_squared(const EigenState& state, double tol);

/// Sign changes of psi on (-x_max, x_max).
int node_count(const EigenState& state);

/// The number of eigenvalues strictly below E, from the node count of the
/// decaying solution on (0, inf) and the sign of psi(0) psi'(0).
int eigenvalue_count_below(const PotentialParams& params, double energy, double tol);

}  // namespace quartic
