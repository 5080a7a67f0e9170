#pragma once

#include "quartic/params.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace quartic::series {

/// Exponents live on the half-integer grid; they are stored as twice their
/// value so that the grid is closed under every operation by construction.
using TwiceExponent = int;

/// Polynomial in the exponential: sum_d p_d x^{d}, keyed by 2d.
using ExpPolynomial = std::map<TwiceExponent, double>;

/// Record of terms that fell outside the stored window during an operation.
struct DroppedTerms {
    std::size_t count = 0;
    double max_abs_coefficient = 0.0;
    TwiceExponent highest_dropped = 0;  // meaningful only when count > 0
};

/// A formal series
///   scale * exp(P(x)) * x^mu * (1 + sum_{j=1}^{N} s_j x^{-j/2})
/// with P on the half-integer grid and mu a half-integer.
class ExpSeries {
public:
    /// The zero series.
    ExpSeries() = default;

    ExpSeries(double scale, ExpPolynomial exp_poly, TwiceExponent twice_lead_power,
              std::vector<double> tail, std::size_t window);

    /// Validating constructor: lead_power must be a half-integer.
    static ExpSeries from_power(double scale, ExpPolynomial exp_poly, double lead_power,
                                std::vector<double> tail, std::size_t window);

    /// exp(-(2/3) x^{3/2}) times the rest.
    static ExpSeries airy_type(double scale, TwiceExponent twice_lead_power,
                               std::vector<double> tail, std::size_t window);

    static ExpPolynomial airy_exponent() { return {{3, -2.0 / 3.0}}; }

    double scale() const noexcept { return scale_; }
    const ExpPolynomial& exp_poly() const noexcept { return exp_poly_; }
    TwiceExponent twice_lead_power() const noexcept { return lead_; }
    double lead_power() const noexcept { return 0.5 * lead_; }
    /// s_1..s_N, padded with zeros up to the window length.
    const std::vector<double>& tail() const noexcept { return tail_; }
    std::size_t window() const noexcept { return window_; }
    bool is_zero() const noexcept { return scale_ == 0.0; }
    const DroppedTerms& dropped() const noexcept { return dropped_; }

    /// Coefficient s_j of x^{mu - j/2} (s_0 = 1). Throws ConsistencyError when
    /// j lies beyond the stored window.
    double coefficient(std::size_t j) const;

    /// Numerical value of the truncated series at x > 0.
    double evaluate(double x) const;

    /// Terms as absolute (twice) exponent -> coefficient, scale included.
    std::map<TwiceExponent, double> terms() const;

    /// Rebuild a normalised series from raw terms. Coefficients that cancel to
    /// rounding level (relative to the magnitudes that produced them) become
    /// exact zeros. Terms below the window are dropped and recorded.
    static ExpSeries from_terms(const ExpPolynomial& exp_poly,
                                const std::map<TwiceExponent, double>& coeffs,
                                const std::map<TwiceExponent, double>& magnitudes,
                                std::size_t window, DroppedTerms carried = {});

private:
    double scale_ = 0.0;
    ExpPolynomial exp_poly_;
    TwiceExponent lead_ = 0;
    std::vector<double> tail_;
    std::size_t window_ = 0;
    DroppedTerms dropped_;
};

/// Formal d/dx of a series, as raw terms with contribution magnitudes.
struct RawTerms {
    std::map<TwiceExponent, double> value;
    std::map<TwiceExponent, double> magnitude;
};
RawTerms formal_derivative(const ExpPolynomial& exp_poly, const RawTerms& terms);
RawTerms raw_terms(const ExpSeries& s);

/// (d^2/dx^2 - x) applied to a series carrying exp(-(2/3) x^{3/2}); the tail
/// window of the input is kept, anything pushed below it is recorded.
ExpSeries apply_airy_operator(const ExpSeries& s);

/// Coefficients C_{n,k}, k = 0..K, of the large-X expansion
///   int_0^inf Ai(t+X) t^{n-1/2} dt
///     ~ Gamma(n+1/2)/(2 sqrt(pi)) exp(-(2/3)X^{3/2}) X^{-(n+1)/2} (1 + sum_k C_{n,k} X^{-3k/2}).
struct LemmaCoeffs {
    int n = 0;
    std::vector<double> coeffs;  // coeffs[0] == 1

    int max_order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    /// Throws ConsistencyError for k beyond the computed window.
    double at(int k) const;
};

/// Closed-form C_{0,k} from the Cauchy product of the Ai asymptotic series.
double c0_closed_form(int k);

/// Requires n <= 8 and K <= 10. Orders n >= 1 come from repeated
/// application of apply_airy_operator to the n = 0 series.
LemmaCoeffs lemma_coeffs(int n, int K);

/// The n-th moment series as an ExpSeries (window 3K).
ExpSeries moment_series(int n, int K);

/// Coefficients B_1..B_N of the large-x expansion of the decaying solution
///   psi ~ x^{-1} exp(-(s/3) x^3 - (a/(2s)) x) (1 + sum_n B_n x^{-n/2}),  s = sqrt(lambda/2).
/// Requires N <= 20. Odd-index coefficients come out as exact zeros.
std::vector<double> ode_series_coeffs(const PotentialParams& params, double energy, int N);

/// Coefficients L_n of log(1 + sum B_n t^n) = sum L_n t^n, term by term.
std::vector<double> log_series(const std::vector<double>& B);

/// exp(-(s/3) x^3 - (a/(2s)) x) as an ExpPolynomial.
ExpPolynomial oscillator_exponent(const PotentialParams& params);

/// Formal (H(a, lambda) - E) applied to the series built from B, returned as raw
/// terms (absolute twice exponents). Used to confirm the B_n cancel the
/// residual through the matched orders.
RawTerms schrodinger_residual(const PotentialParams& params, double energy,
                              const std::vector<double>& B);

}  // namespace quartic::series
