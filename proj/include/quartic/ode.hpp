#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace quartic::ode {

using Vec2 = std::array<double, 2>;
using Rhs = std::function<Vec2(double, const Vec2&)>;

struct Sample {
    double x;
    Vec2 y;
};

struct Options {
    double rtol = 1e-10;
    double atol = 1e-14;        // floor added to rtol * scale
    double initial_step = 1e-3;
    double max_step = 0.05;
    std::size_t max_steps = 2'000'000;
};

/// Dormand-Prince 5(4) integration of y' = f(x, y) from x0 to x1 (either
/// direction). Returns every accepted step including both endpoints.
/// Local error is measured against rtol * max|y| seen so far (per component)
/// plus atol, which suits linear problems whose solution grows along the
/// integration direction.
std::vector<Sample> integrate(const Rhs& f, double x0, const Vec2& y0, double x1,
                              const Options& opts);

}  // namespace quartic::ode
