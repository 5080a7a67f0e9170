#include "quartic/airy.hpp"
#include "quartic/asymptotic_series.hpp"
#include "quartic/errors.hpp"
#include "quartic/oscillator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace quartic;
using series::ExpSeries;

namespace {

const double two_sqrt_pi = 2.0 * std::sqrt(std::numbers::pi);

// phi_n(X) with the leading Gamma(n+1/2)/(2 sqrt(pi)) exp(-(2/3)X^{3/2}) X^{-(n+1)/2} removed.
double normalised_moment(int n, double X, double value) {
    return value * two_sqrt_pi / airy::gamma_half(n) * std::pow(X, 0.5 * (n + 1)) *
           std::exp(2.0 / 3.0 * std::pow(X, 1.5));
}

double leading_moment(int n, double X) {
    return airy::gamma_half(n) / two_sqrt_pi * std::pow(X, -0.5 * (n + 1)) *
           std::exp(-2.0 / 3.0 * std::pow(X, 1.5));
}

}  // namespace

TEST_CASE("C_{0,k} closed form") {
    CHECK(series::c0_closed_form(0) == 1.0);
    CHECK(series::c0_closed_form(1) == doctest::Approx(-5.0 / 12.0).epsilon(1e-15));
    // phi_0 = 2^{2/3} pi Ai(X / 2^{2/3})^2; squaring the Ai series with u_1 = 5/72,
    // u_2 = 385/10368 gives C_{0,2} = 9 (2 u_2 + u_1^2) = 205/288
    CHECK(series::c0_closed_form(2) == doctest::Approx(205.0 / 288.0).epsilon(1e-14));
    const auto c = series::lemma_coeffs(0, 10);
    for (int k = 0; k <= 10; ++k) {
        CAPTURE(k);
        CHECK(c.at(k) == doctest::Approx(series::c0_closed_form(k)).epsilon(1e-14));
    }
}

TEST_CASE("leading coefficient is one for every order") {
    for (int n = 0; n <= 8; ++n) CHECK(series::lemma_coeffs(n, 4).at(0) == 1.0);
}

TEST_CASE("Airy operator maps the n-series onto the (n+1)-series") {
    for (int n = 0; n < 6; ++n) {
        CAPTURE(n);
        const ExpSeries s = series::apply_airy_operator(series::moment_series(n, 6));
        CHECK(s.scale() == doctest::Approx(airy::gamma_half_ratio(n + 1) / 2.0).epsilon(1e-14));
        CHECK(s.scale() / series::moment_series(n, 6).scale() == doctest::Approx(n + 0.5));
        CHECK(s.twice_lead_power() == -(n + 2));
        const auto next = series::lemma_coeffs(n + 1, 6);
        for (int k = 1; k <= 6; ++k) CHECK(s.coefficient(3 * k) == doctest::Approx(next.at(k)));
    }
}

TEST_CASE("Airy operator on the zero series") {
    const auto z = series::apply_airy_operator(ExpSeries::airy_type(0.0, -1, {}, 6));
    CHECK(z.is_zero());
    CHECK(z.evaluate(3.0) == 0.0);
}

TEST_CASE("operator output against the moment integrals at x = 50") {
    for (int n = 0; n <= 3; ++n) {
        CAPTURE(n);
        const double lhs = series::apply_airy_operator(series::moment_series(n, 6)).evaluate(50.0);
        const double rhs = airy::phi_n(n + 1, 50.0, 1e-14);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs));
    }
}

TEST_CASE("two-term partial sums against quadrature") {
    for (int n = 0; n <= 2; ++n) {
        const auto C = series::lemma_coeffs(n, 2);
        for (double X : {30.0, 50.0}) {
            CAPTURE(n);
            CAPTURE(X);
            const double q = airy::phi_n_quadrature(n, X, 1e-12 * leading_moment(n, X)).value;
            const double lhs = normalised_moment(n, X, q);
            const double partial = 1.0 + C.at(1) * std::pow(X, -1.5);
            CHECK(std::abs(lhs - partial) <= 2.0 * std::abs(C.at(2)) * std::pow(X, -3.0));
        }
    }
}

TEST_CASE("the moments form an asymptotic sequence") {
    // phi_{n+1} / phi_n = (n + 1/2) X^{-1/2} (1 + O(X^{-3/2}))
    for (int n = 0; n <= 2; ++n) {
        double previous = INFINITY;
        for (double X : {5.0, 10.0, 20.0, 40.0, 80.0}) {
            CAPTURE(n);
            CAPTURE(X);
            const double ratio = airy::phi_n(n + 1, X, 1e-14) / airy::phi_n(n, X, 1e-14);
            CHECK(ratio < previous);
            previous = ratio;
            if (X >= 40.0) CHECK(ratio * std::sqrt(X) / (n + 0.5) == doctest::Approx(1.0).epsilon(0.02));
        }
    }
}

TEST_CASE("exponent grid closure") {
    const auto s = series::moment_series(3, 5);
    for (const auto& [e, c] : s.terms()) {
        CAPTURE(e);
        CHECK(std::isfinite(c));
    }
    CHECK_THROWS_AS(ExpSeries::from_power(1.0, ExpSeries::airy_exponent(), 0.3, {}, 4),
                    ConsistencyError);
    const auto ok = ExpSeries::from_power(1.0, ExpSeries::airy_exponent(), -1.5, {0.25}, 4);
    CHECK(ok.twice_lead_power() == -3);
}

TEST_CASE("window overflow is reported") {
    const auto c = series::lemma_coeffs(2, 3);
    CHECK_THROWS_AS(c.at(4), ConsistencyError);
    CHECK_THROWS_AS(series::moment_series(1, 2).coefficient(7), ConsistencyError);
    CHECK_THROWS_AS(series::lemma_coeffs(9, 2), ConfigurationError);
    CHECK_THROWS_AS(series::lemma_coeffs(1, 11), ConfigurationError);
    CHECK_THROWS_AS(series::ode_series_coeffs(PotentialParams(0, 8), 1.0, 21), ConfigurationError);
}

TEST_CASE("Airy operator drops terms pushed below the window") {
    const auto s = series::apply_airy_operator(series::moment_series(0, 2));
    CHECK(s.dropped().count > 0);
}

TEST_CASE("large-x coefficients cancel the residual through the matched orders") {
    for (double a : {-3.0, 0.0, 0.7, 2.0}) {
        const PotentialParams p(a, 8.0);
        for (int N : {2, 4, 6, 8, 12}) {
            CAPTURE(a);
            CAPTURE(N);
            const double E = 1.9;
            const auto B = series::ode_series_coeffs(p, E, N);
            REQUIRE(B.size() == static_cast<std::size_t>(N));
            for (int i = 0; i < N; i += 2) CHECK(B[static_cast<std::size_t>(i)] == 0.0);
            const auto r = series::schrodinger_residual(p, E, B);
            for (const auto& [e, v] : r.value) {
                if (e > -(N + 2)) {
                    CAPTURE(e);
                    CHECK(std::abs(v) <= 1e-13 * r.magnitude.at(e));
                }
            }
            // the first unmatched order is populated
            CHECK(std::abs(r.value.at(-(N + 2)) + r.value.at(-(N + 4))) > 0.0);
        }
    }
}

TEST_CASE("leading large-x coefficient") {
    // B_2 = -E / (2 s) at a = 0, with s = 2 at lambda = 8
    const PotentialParams p(0.0, 8.0);
    const auto B = series::ode_series_coeffs(p, 3.0, 4);
    CHECK(B[1] == doctest::Approx(-0.75));
}

TEST_CASE("large-x series against the shooting solution") {
    const PotentialParams p(0.0, 8.0);
    const auto state = solve_state(p, 0, 1e-10);
    REQUIRE(state.x_max() > 6.0);
    const double x = 6.0;
    const double u = x * state.rescaled(x).first;
    const auto B = series::ode_series_coeffs(p, state.energy(), 16);
    auto partial = [&](int N) {
        double sum = 1.0;
        for (int n = 1; n <= N; ++n) sum += B[static_cast<std::size_t>(n - 1)] * std::pow(x, -0.5 * n);
        return sum;
    };
    // N = 6 stops one term short of 1e-4: the first omitted term is B_8 x^{-4} = 1.4e-4
    const double omitted = std::abs(B[7]) * std::pow(x, -4.0);
    CHECK(std::abs(u - partial(6)) <= 2.0 * omitted);
    CHECK(std::abs(u - partial(8)) <= 1e-4 * std::abs(u));
    CHECK(std::abs(u - partial(16)) <= 1e-7 * std::abs(u));
}

TEST_CASE("large-x coefficients are covariant under scaling") {
    const PotentialParams p(1.3, 8.0);
    const double E = 2.7;
    for (double beta : {0.5, 4.0, 8.0}) {
        const auto scaled = p.scaled(beta);
        const auto B = series::ode_series_coeffs(p, E, 12);
        const auto Bs = series::ode_series_coeffs(scaled, E * std::pow(beta, -1.0 / 3.0), 12);
        for (std::size_t n = 1; n <= B.size(); ++n) {
            CAPTURE(beta);
            CAPTURE(n);
            CHECK(Bs[n - 1] == doctest::Approx(std::pow(beta, n / 12.0) * B[n - 1]).epsilon(1e-12));
        }
    }
}

TEST_CASE("log series inverts the exponential") {
    const auto B = series::ode_series_coeffs(PotentialParams(0.4, 8.0), 5.5, 16);
    const auto L = series::log_series(B);
    REQUIRE(L.size() == B.size());
    for (double t : {0.01, 0.05, 0.1}) {
        double sb = 1.0, sl = 0.0;
        for (std::size_t n = 1; n <= B.size(); ++n) {
            sb += B[n - 1] * std::pow(t, n);
            sl += L[n - 1] * std::pow(t, n);
        }
        CAPTURE(t);
        CHECK(std::exp(sl) == doctest::Approx(sb).epsilon(1e-6 * std::pow(t / 0.1, 16)));
    }
    CHECK(L[1] == doctest::Approx(B[1]));
    CHECK(L[3] == doctest::Approx(B[3] - 0.5 * B[1] * B[1]));
}
