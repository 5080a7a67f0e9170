#include "quartic/asymptotic_series.hpp"

#include "quartic/airy.hpp"
#include "quartic/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace quartic::series {

namespace {

constexpr double cancellation_factor = 64.0 * std::numeric_limits<double>::epsilon();

void accumulate(RawTerms& out, TwiceExponent e, double value, double magnitude) {
    out.value[e] += value;
    out.magnitude[e] += magnitude;
}

RawTerms combine(const RawTerms& a, const RawTerms& b, double fb) {
    RawTerms out = a;
    for (const auto& [e, v] : b.value) {
        accumulate(out, e, fb * v, std::abs(fb) * b.magnitude.at(e));
    }
    return out;
}

RawTerms shift(const RawTerms& t, TwiceExponent by, double factor) {
    RawTerms out;
    for (const auto& [e, v] : t.value) {
        accumulate(out, e + by, factor * v, std::abs(factor) * t.magnitude.at(e));
    }
    return out;
}

}  // namespace

ExpSeries::ExpSeries(double scale, ExpPolynomial exp_poly, TwiceExponent twice_lead_power,
                     std::vector<double> tail, std::size_t window)
    : scale_(scale),
      exp_poly_(std::move(exp_poly)),
      lead_(twice_lead_power),
      tail_(std::move(tail)),
      window_(window) {
    if (tail_.size() > window_) {
        throw ConsistencyError("series tail longer than its window (" + std::to_string(tail_.size()) +
                               " > " + std::to_string(window_) + ")");
    }
    tail_.resize(window_, 0.0);
}

ExpSeries ExpSeries::from_power(double scale, ExpPolynomial exp_poly, double lead_power,
                                std::vector<double> tail, std::size_t window) {
    const double twice = 2.0 * lead_power;
    if (std::nearbyint(twice) != twice) {
        throw ConsistencyError("exponent " + std::to_string(lead_power) +
                               " is off the half-integer grid");
    }
    return {scale, std::move(exp_poly), static_cast<TwiceExponent>(twice), std::move(tail), window};
}

ExpSeries ExpSeries::airy_type(double scale, TwiceExponent twice_lead_power,
                               std::vector<double> tail, std::size_t window) {
    return {scale, airy_exponent(), twice_lead_power, std::move(tail), window};
}

double ExpSeries::coefficient(std::size_t j) const {
    if (j == 0) return 1.0;
    if (j > window_) {
        throw ConsistencyError("coefficient " + std::to_string(j) + " requested beyond window " +
                               std::to_string(window_));
    }
    return tail_[j - 1];
}

double ExpSeries::evaluate(double x) const {
    if (is_zero()) return 0.0;
    if (!(x > 0.0)) throw DomainError("formal series evaluated at non-positive x");
    double expo = 0.0;
    for (const auto& [d2, p] : exp_poly_) expo += p * std::pow(x, 0.5 * d2);
    const double r = 1.0 / std::sqrt(x);
    double sum = 0.0;
    for (auto it = tail_.rbegin(); it != tail_.rend(); ++it) sum = (sum + *it) * r;
    return scale_ * std::exp(expo) * std::pow(x, lead_power()) * (1.0 + sum);
}

std::map<TwiceExponent, double> ExpSeries::terms() const {
    std::map<TwiceExponent, double> out;
    if (is_zero()) return out;
    out[lead_] = scale_;
    for (std::size_t j = 0; j < tail_.size(); ++j) {
        if (tail_[j] != 0.0) out[lead_ - static_cast<TwiceExponent>(j + 1)] = scale_ * tail_[j];
    }
    return out;
}

ExpSeries ExpSeries::from_terms(const ExpPolynomial& exp_poly,
                                const std::map<TwiceExponent, double>& coeffs,
                                const std::map<TwiceExponent, double>& magnitudes,
                                std::size_t window, DroppedTerms carried) {
    std::map<TwiceExponent, double> clean;
    for (const auto& [e, v] : coeffs) {
        const auto m = magnitudes.find(e);
        const double mag = m == magnitudes.end() ? std::abs(v) : m->second;
        if (std::abs(v) > cancellation_factor * mag && v != 0.0) clean[e] = v;
    }
    ExpSeries out;
    out.exp_poly_ = exp_poly;
    out.window_ = window;
    out.tail_.assign(window, 0.0);
    out.dropped_ = carried;
    if (clean.empty()) return out;

    const auto top = std::prev(clean.end());
    out.lead_ = top->first;
    out.scale_ = top->second;
    const TwiceExponent lowest_kept = out.lead_ - static_cast<TwiceExponent>(window);
    for (const auto& [e, v] : clean) {
        if (e == out.lead_) continue;
        if (e < lowest_kept) {
            auto& d = out.dropped_;
            if (d.count == 0 || e > d.highest_dropped) d.highest_dropped = e;
            ++d.count;
            d.max_abs_coefficient = std::max(d.max_abs_coefficient, std::abs(v / out.scale_));
            continue;
        }
        out.tail_[static_cast<std::size_t>(out.lead_ - e) - 1] = v / out.scale_;
    }
    return out;
}

RawTerms raw_terms(const ExpSeries& s) {
    RawTerms out;
    for (const auto& [e, v] : s.terms()) accumulate(out, e, v, std::abs(v));
    return out;
}

RawTerms formal_derivative(const ExpPolynomial& exp_poly, const RawTerms& terms) {
    // d/dx [c e^{P} x^{nu}] = c e^{P} (nu x^{nu-1} + sum_d d p_d x^{nu+d-1})
    RawTerms out;
    for (const auto& [e, v] : terms.value) {
        const double mag = terms.magnitude.at(e);
        const double nu = 0.5 * e;
        if (e != 0) accumulate(out, e - 2, nu * v, std::abs(nu) * mag);
        for (const auto& [d2, p] : exp_poly) {
            const double f = 0.5 * d2 * p;
            accumulate(out, e + d2 - 2, f * v, std::abs(f) * mag);
        }
    }
    return out;
}

ExpSeries apply_airy_operator(const ExpSeries& s) {
    if (s.exp_poly() != ExpSeries::airy_exponent()) {
        throw ConsistencyError("Airy operator requires the exp(-(2/3) x^{3/2}) factor");
    }
    if (s.is_zero()) return ExpSeries::from_terms(s.exp_poly(), {}, {}, s.window(), s.dropped());
    const RawTerms t = raw_terms(s);
    const RawTerms d2 = formal_derivative(s.exp_poly(), formal_derivative(s.exp_poly(), t));
    const RawTerms result = combine(d2, shift(t, 2, 1.0), -1.0);
    return ExpSeries::from_terms(s.exp_poly(), result.value, result.magnitude, s.window(),
                                 s.dropped());
}

double LemmaCoeffs::at(int k) const {
    if (k < 0 || k > max_order()) {
        throw ConsistencyError("C_{" + std::to_string(n) + "," + std::to_string(k) +
                               "} lies beyond the computed window K = " +
                               std::to_string(max_order()));
    }
    return coeffs[static_cast<std::size_t>(k)];
}

double c0_closed_form(int k) {
    if (k < 0) throw DomainError("coefficient order must be nonnegative");
    // (1/pi)(-2/9)^k sum_m Gamma(3m+1/2) Gamma(3(k-m)+1/2) / ((2m)! (2k-2m)!)
    // with Gamma(j+1/2) = sqrt(pi) * gamma_half_ratio(j); the pi cancels.
    auto factorial = [](int n) {
        double f = 1.0;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    double sum = 0.0;
    for (int m = 0; m <= k; ++m) {
        sum += airy::gamma_half_ratio(3 * m) * airy::gamma_half_ratio(3 * (k - m)) /
               (factorial(2 * m) * factorial(2 * k - 2 * m));
    }
    return std::pow(-2.0, k) * sum / std::pow(9.0, k);
}

ExpSeries moment_series(int n, int K) {
    if (n < 0 || K < 0) throw ConfigurationError("moment series orders must be nonnegative");
    const std::size_t window = static_cast<std::size_t>(3 * K);
    std::vector<double> tail(window, 0.0);
    for (int k = 1; k <= K; ++k) tail[static_cast<std::size_t>(3 * k - 1)] = c0_closed_form(k);
    // Gamma(1/2) / (2 sqrt(pi)) = 1/2, leading power X^{-1/2}
    ExpSeries s = ExpSeries::airy_type(0.5, -1, std::move(tail), window);
    for (int i = 0; i < n; ++i) s = apply_airy_operator(s);
    return s;
}

LemmaCoeffs lemma_coeffs(int n, int K) {
    if (n < 0 || n > 8) throw ConfigurationError("lemma_coeffs requires 0 <= n <= 8");
    if (K < 0 || K > 10) throw ConfigurationError("lemma_coeffs requires 0 <= K <= 10");
    const ExpSeries s = moment_series(n, K);
    const double expected_scale = airy::gamma_half_ratio(n) / 2.0;
    if (std::abs(s.scale() - expected_scale) > 1e-12 * expected_scale ||
        s.twice_lead_power() != -(n + 1)) {
        throw ConsistencyError("moment series lost its Gamma(n+1/2)/(2 sqrt(pi)) normalisation");
    }
    LemmaCoeffs out{n, std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0)};
    out.coeffs[0] = 1.0;
    for (std::size_t j = 1; j <= s.window(); ++j) {
        const double c = s.coefficient(j);
        if (j % 3 == 0) {
            out.coeffs[j / 3] = c;
        } else if (c != 0.0) {
            throw ConsistencyError("moment series populated off the X^{-3k/2} lattice");
        }
    }
    return out;
}

ExpPolynomial oscillator_exponent(const PotentialParams& params) {
    const double s = params.root_half_lambda();
    return {{6, -s / 3.0}, {2, -params.a() / (2.0 * s)}};
}

std::vector<double> ode_series_coeffs(const PotentialParams& params, double energy, int N) {
    if (N < 0 || N > 20) throw ConfigurationError("ode_series_coeffs requires 0 <= N <= 20");
    if (!std::isfinite(energy)) throw DomainError("energy must be finite");
    const double s = params.root_half_lambda();
    const double a = params.a();
    const double c = energy + a * a / (4.0 * s * s);
    // Balancing x^{-m/2} in the equation for u = x exp(-S) psi gives
    //   s (m+2) B_{m+2} = -[c B_m + (a/s)(m/2) B_{m-2} + m(m-2)/4 B_{m-4}]
    std::vector<double> B(static_cast<std::size_t>(N) + 1, 0.0);
    B[0] = 1.0;
    auto at = [&](int i) { return i < 0 ? 0.0 : B[static_cast<std::size_t>(i)]; };
    for (int m = -1; m + 2 <= N; ++m) {
        const double rhs = c * at(m) + (a / s) * (0.5 * m) * at(m - 2) + 0.25 * m * (m - 2) * at(m - 4);
        B[static_cast<std::size_t>(m + 2)] = -rhs / (s * (m + 2));
    }
    return {B.begin() + 1, B.end()};
}

std::vector<double> log_series(const std::vector<double>& B) {
    // n L_n = n B_n - sum_{j<n} j L_j B_{n-j}
    std::vector<double> L(B.size(), 0.0);
    for (std::size_t n = 1; n <= B.size(); ++n) {
        double acc = static_cast<double>(n) * B[n - 1];
        for (std::size_t j = 1; j < n; ++j) acc -= static_cast<double>(j) * L[j - 1] * B[n - j - 1];
        L[n - 1] = acc / static_cast<double>(n);
    }
    return L;
}

RawTerms schrodinger_residual(const PotentialParams& params, double energy,
                              const std::vector<double>& B) {
    const ExpPolynomial P = oscillator_exponent(params);
    RawTerms psi;
    accumulate(psi, -2, 1.0, 1.0);
    for (std::size_t n = 1; n <= B.size(); ++n) {
        if (B[n - 1] != 0.0) {
            accumulate(psi, -2 - static_cast<TwiceExponent>(n), B[n - 1], std::abs(B[n - 1]));
        }
    }
    const RawTerms d2 = formal_derivative(P, formal_derivative(P, psi));
    RawTerms out = shift(d2, 0, -1.0);
    out = combine(out, shift(psi, 4, params.a()), 1.0);
    out = combine(out, shift(psi, 8, 0.5 * params.lambda()), 1.0);
    out = combine(out, psi, -energy);
    return out;
}

}  // namespace quartic::series
