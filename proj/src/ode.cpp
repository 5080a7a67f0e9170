#include "quartic/ode.hpp"

#include "quartic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quartic::ode {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// difference between the 5th- and 4th-order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

Vec2 axpy(const Vec2& y, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
    Vec2 out = y;
    for (const auto& [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

}  // namespace

std::vector<Sample> integrate(const Rhs& f, double x0, const Vec2& y0, double x1,
                              const Options& opts) {
    std::vector<Sample> out;
    out.push_back({x0, y0});
    if (x0 == x1) return out;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    double x = x0;
    Vec2 y = y0;
    Vec2 k1 = f(x, y);
    double h = std::min(opts.initial_step, std::abs(x1 - x0));
    Vec2 scale{std::abs(y[0]), std::abs(y[1])};

    std::size_t steps = 0;
    while (dir * (x1 - x) > 0.0) {
        if (++steps > opts.max_steps) {
            std::ostringstream msg;
            msg << "ODE integration exceeded " << opts.max_steps << " steps at x = " << x
                << "; the problem is stiff there, try a smaller maximum step than " << h;
            throw IntegrationError(msg.str(), 0.5 * h);
        }
        h = std::min({h, opts.max_step, std::abs(x1 - x)});
        const double hs = dir * h;
        const Vec2 k2 = f(x + c2 * hs, axpy(y, hs, {{a21, &k1}}));
        const Vec2 k3 = f(x + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
        const Vec2 k4 = f(x + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec2 k5 =
            f(x + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const double xn = (h == std::abs(x1 - x)) ? x1 : x + hs;
        const Vec2 k6 =
            f(xn, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const Vec2 yn = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const Vec2 k7 = f(xn, yn);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opts.atol + opts.rtol * std::max({scale[i], std::abs(y[i]), std::abs(yn[i])});
            err = std::max(err, std::abs(ei) / sc);
        }
        if (!std::isfinite(err)) {
            throw IntegrationError("ODE integration produced non-finite values", 0.5 * h);
        }
        if (err <= 1.0) {
            x = xn;
            y = yn;
            k1 = k7;
            scale[0] = std::max(scale[0], std::abs(y[0]));
            scale[1] = std::max(scale[1], std::abs(y[1]));
            out.push_back({x, y});
            const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
            h *= grow;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < 1e-14 * std::max(1.0, std::abs(x))) {
                std::ostringstream msg;
                msg << "ODE step size underflow at x = " << x;
                throw IntegrationError(msg.str(), h);
            }
        }
    }
    return out;
}

}  // namespace quartic::ode
