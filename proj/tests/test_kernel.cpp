#include "oracles/airy_maclaurin.hpp"

#include "quartic/airy.hpp"
#include "quartic/errors.hpp"
#include "quartic/kernel.hpp"
#include "quartic/quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace quartic;
using kernel::kernel_eval;

TEST_CASE("value at the origin") {
    const double expected = 2.0 * static_cast<double>(oracle::ai_zero());
    CHECK(kernel_eval(PotentialParams(0.0, 8.0), 0.0, 0.0, 0.0) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(kernel_eval(PotentialParams(0.0, 8.0), 0.0, 0.0, 0.0) ==
          doctest::Approx(0.71005610777563444).epsilon(1e-15));
}

TEST_CASE("closed form at lambda = 8") {
    const PotentialParams p(1.2, 8.0);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double x = U(gen), y = U(gen), z = U(gen);
        const double expected = 2.0 * std::exp(2.0 * x * y * z) * airy::ai(x * x + y * y + z * z + p.b()).ai;
        CHECK(kernel_eval(p, x, y, z) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("permutation and sign symmetry are exact") {
    const PotentialParams p(-0.4, 3.0);
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> U(-2.5, 2.5);
    for (int i = 0; i < 200; ++i) {
        std::array<double, 3> v{U(gen), U(gen), U(gen)};
        const double ref = kernel_eval(p, v[0], v[1], v[2]);
        std::sort(v.begin(), v.end());
        do {
            CHECK(kernel_eval(p, v[0], v[1], v[2]) == ref);
            CHECK(kernel_eval(p, -v[0], -v[1], v[2]) == ref);
            CHECK(kernel_eval(p, v[0], -v[1], -v[2]) == ref);
            CHECK(kernel_eval(p, -v[0], v[1], -v[2]) == ref);
        } while (std::next_permutation(v.begin(), v.end()));
    }
}

TEST_CASE("positivity above the threshold") {
    const PotentialParams p(1.0, 8.0);
    CHECK(p.a() > p.positivity_threshold());
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            for (int k = 0; k <= 20; ++k) {
                const double x = -3.0 + 0.3 * i, y = -3.0 + 0.3 * j, z = -3.0 + 0.3 * k;
                CHECK(kernel_eval(p, x, y, z) > 0.0);
            }
        }
    }
}

TEST_CASE("negative values just below the threshold") {
    const PotentialParams p(4.0 * airy::FIRST_ZERO - 0.1, 8.0);
    CHECK(p.a() < p.positivity_threshold());
    CHECK(kernel_eval(p, 0.0, 0.0, 0.0) < 0.0);
}

TEST_CASE("covariance under scaling") {
    const PotentialParams p(0.6, 8.0);
    for (double beta : {0.25, 2.0, 8.0}) {
        const auto q = p.scaled(beta);
        const double r = std::pow(beta, 1.0 / 6.0);
        for (auto [x, y, z] : {std::array{0.3, -0.7, 1.1}, std::array{1.5, 0.2, 0.9}}) {
            CAPTURE(beta);
            CHECK(kernel_eval(q, r * x, r * y, r * z) ==
                  doctest::Approx(std::pow(beta, -1.0 / 3.0) * kernel_eval(p, x, y, z)).epsilon(1e-10));
        }
    }
}

TEST_CASE("analytic x derivatives") {
    const PotentialParams p(0.8, 8.0);
    const double h = 1e-4;
    for (auto [x, y, z] : {std::array{0.3, -0.7, 1.1}, std::array{-1.2, 0.4, 0.9}, std::array{0.0, 1.0, 2.0}}) {
        const auto d = kernel::kernel_x_derivatives(p, x, y, z);
        auto f = [&](double t) { return kernel_eval(p, t, y, z); };
        CHECK(d.value == f(x));
        CHECK(d.d1 == doctest::Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-7));
        CHECK(d.d2 == doctest::Approx((f(x + h) - 2 * f(x) + f(x - h)) / (h * h)).epsilon(1e-5));
        CHECK(kernel::kernel_x_derivative(p, 1, x, y, z) == d.d1);
        CHECK(kernel::kernel_x_derivative(p, 2, x, y, z) == d.d2);
        for (int n = 0; n <= 2; ++n) {
            CHECK(kernel::log_abs_x_derivative(p, n, x, y, z) ==
                  doctest::Approx(std::log(std::abs(kernel::kernel_x_derivative(p, n, x, y, z)))).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(kernel::kernel_x_derivative(p, 3, 0.1, 0.2, 0.3), ConfigurationError);
}

TEST_CASE("log magnitude survives underflow") {
    const PotentialParams p(0.0, 8.0);
    CHECK(kernel_eval(p, 30.0, 1.0, 0.0) == 0.0);
    const double l = kernel::log_abs_x_derivative(p, 0, 30.0, 1.0, 0.0);
    CHECK(std::isfinite(l));
    // log 2 - (2/3) 901^{3/2} - log(2 sqrt(pi) 901^{1/4}) to leading order
    CHECK(l == doctest::Approx(std::log(2.0) - 2.0 / 3.0 * std::pow(901.0, 1.5) -
                                std::log(2.0 * std::sqrt(std::numbers::pi) * std::pow(901.0, 0.25)))
                   .epsilon(1e-6));
}

TEST_CASE("PDE identity residuals") {
    const PotentialParams p(0.0, 8.0);
    SUBCASE("coincident x and z") {
        for (double y : {-0.8, 0.0, 0.5, 1.3}) {
            const auto r = kernel::check_pde_identity(p, 0.6, y, 0.6, 1e-2);
            CHECK(std::abs(r.r_xz) <= 1e-13 * r.scale);
        }
    }
    SUBCASE("fourth-order decay under refinement") {
        const auto coarse = kernel::check_pde_identity(p, 0.7, -0.3, 1.1, 2e-2);
        const auto fine = kernel::check_pde_identity(p, 0.7, -0.3, 1.1, 1e-2);
        CHECK(std::abs(fine.r_xy) * 10.0 <= std::abs(coarse.r_xy));
        CHECK(std::abs(fine.r_xz) * 10.0 <= std::abs(coarse.r_xz));
        CHECK(std::abs(coarse.r_xy / fine.r_xy) == doctest::Approx(16.0).epsilon(0.1));
    }
    SUBCASE("step outside the allowed range") {
        CHECK_THROWS_AS(kernel::check_pde_identity(p, 0.1, 0.2, 0.3, 5e-5), ConfigurationError);
        CHECK_THROWS_AS(kernel::check_pde_identity(p, 0.1, 0.2, 0.3, 0.2), ConfigurationError);
    }
}

TEST_CASE("decay envelope dominates on held-out points") {
    const PotentialParams p(0.0, 8.0);
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> U(-12.0, 12.0);
    for (int n = 0; n <= 2; ++n) {
        const auto env = kernel::decay_envelope(p, 1.0, 0.9, n);
        CHECK(env.C() > 0.0);
        CHECK(env.r_fit() >= 8.0);
        double worst = -INFINITY;
        for (int i = 0; i < 10000; ++i) {
            const double x = U(gen), z = U(gen);
            worst = std::max(worst, kernel::log_abs_x_derivative(p, n, x, 1.0, z) - env.log_bound(x, z));
        }
        CAPTURE(n);
        CHECK(worst <= 0.0);
    }
}

TEST_CASE("truncation radius is nonincreasing in eps") {
    const auto env = kernel::decay_envelope(PotentialParams(0.0, 8.0), 1.0, 0.9, 0);
    double previous = INFINITY;
    for (double eps = 1e-16; eps <= 1e-2; eps *= 10) {
        const double R = env.truncation_radius(eps);
        CHECK(R <= previous);
        CHECK(env.C() * std::exp(-2.0 * 0.9 / 3.0 * R * R * R) <= eps * (1 + 1e-9));
        previous = R;
    }
}

TEST_CASE("tail beyond the truncation radius is negligible") {
    const PotentialParams p(0.0, 8.0);
    const auto env = kernel::decay_envelope(p, 1.0, 0.9, 0);
    const double R = env.truncation_radius(1e-12);
    auto f = [&](double z) { return std::abs(kernel_eval(p, 0.5, 1.0, z)); };
    const double tail = quadrature::integrate_interval(f, R, R + 10.0, 1e-16).value +
                        quadrature::integrate_interval(f, -R - 10.0, -R, 1e-16).value;
    CHECK(tail < 1e-11);
    CHECK(env.tail_bound(R, 1.0) >= tail);
}

TEST_CASE("envelope arguments") {
    const PotentialParams p(0.0, 8.0);
    CHECK_THROWS_AS(kernel::decay_envelope(p, 1.0, 0.0, 0), ConfigurationError);
    CHECK_THROWS_AS(kernel::decay_envelope(p, 1.0, 1.0, 0), ConfigurationError);
    CHECK_THROWS_AS(kernel::decay_envelope(p, 1.0, 0.9, 3), ConfigurationError);
}

TEST_CASE("envelope rate follows lambda") {
    CHECK(kernel::decay_rate(PotentialParams(0.0, 8.0), 0.9) == doctest::Approx(0.6));
    std::mt19937_64 gen(77);
    for (double lambda : {1.0, 20.0}) {
        const PotentialParams p(0.5, lambda);
        const auto env = kernel::decay_envelope(p, 1.2, 0.9, 1);
        const double reach = 12.0 * std::pow(8.0 / lambda, 1.0 / 6.0);
        std::uniform_real_distribution<double> U(-reach, reach);
        double worst = -INFINITY;
        for (int i = 0; i < 5000; ++i) {
            const double x = U(gen), z = U(gen);
            worst = std::max(worst, kernel::log_abs_x_derivative(p, 1, x, 1.2, z) - env.log_bound(x, z));
        }
        CAPTURE(lambda);
        CHECK(worst <= 0.0);
    }
}
