#include "quartic/kernel.hpp"

#include "quartic/airy.hpp"
#include "quartic/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace quartic::kernel {

namespace {

constexpr int fit_angles = 64;
constexpr double fit_radius = 8.0;
constexpr double fit_dr = 0.05;
constexpr double safety = 2.0;

struct Shape {
    double L;      // lambda^{1/3}
    double s;      // sqrt(lambda/2)
    double shift;  // a / L^2
};

Shape shape(const PotentialParams& p) {
    const double L = std::cbrt(p.lambda());
    return {L, p.root_half_lambda(), p.a() / (L * L)};
}

void check_finite(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw DomainError("kernel arguments must be finite");
    }
}

// log of the common prefactor L exp(s xyz) and the scaled Airy pair at xi
struct Parts {
    double log_pre;
    airy::ScaledAiry A;
    double xi;
};

Parts parts(const Shape& sh, double prod, double sumsq) {
    const double xi = 0.5 * sh.L * sumsq + sh.shift;
    const airy::ScaledAiry A = airy::ai_scaled(xi);
    return {std::log(sh.L) + sh.s * prod - A.log_scale, A, xi};
}

// bracket multiplying L exp(s xyz) Ai-scale for the n-th x derivative
double bracket(const Shape& sh, int n, double x, double y, double z, const Parts& P) {
    const double A = P.A.ai, Ap = P.A.ai_prime;
    const double g = sh.s * y * z;  // d/dx of s xyz
    const double dxi = sh.L * x;    // d/dx of xi
    switch (n) {
        case 0:
            return A;
        case 1:
            return g * A + dxi * Ap;
        case 2:
            return g * g * A + 2.0 * g * dxi * Ap + sh.L * Ap + dxi * dxi * P.xi * A;
        default:
            throw ConfigurationError("kernel derivatives are provided for n <= 2");
    }
}

}  // namespace

double kernel_eval(const PotentialParams& params, double x, double y, double z) {
    check_finite(x, y, z);
    std::array<double, 3> m{std::abs(x), std::abs(y), std::abs(z)};
    std::sort(m.begin(), m.end());
    const int negatives = int{std::signbit(x)} + int{std::signbit(y)} + int{std::signbit(z)};
    const bool negative = negatives % 2 == 1;
    const double prod = (negative ? -1.0 : 1.0) * (m[0] * m[1] * m[2]);
    const double sumsq = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
    const Shape sh = shape(params);
    const Parts P = parts(sh, prod, sumsq);
    return std::exp(P.log_pre) * P.A.ai;
}

XDerivatives kernel_x_derivatives(const PotentialParams& params, double x, double y, double z) {
    check_finite(x, y, z);
    const Shape sh = shape(params);
    const Parts P = parts(sh, x * y * z, x * x + y * y + z * z);
    const double e = std::exp(P.log_pre);
    return {kernel_eval(params, x, y, z), e * bracket(sh, 1, x, y, z, P),
            e * bracket(sh, 2, x, y, z, P)};
}

double kernel_x_derivative(const PotentialParams& params, int n, double x, double y, double z) {
    if (n < 0 || n > 2) throw ConfigurationError("kernel derivatives are provided for n <= 2");
    if (n == 0) return kernel_eval(params, x, y, z);
    const auto d = kernel_x_derivatives(params, x, y, z);
    return n == 1 ? d.d1 : d.d2;
}

double log_abs_x_derivative(const PotentialParams& params, int n, double x, double y, double z) {
    check_finite(x, y, z);
    if (n < 0 || n > 2) throw ConfigurationError("kernel derivatives are provided for n <= 2");
    const Shape sh = shape(params);
    const Parts P = parts(sh, x * y * z, x * x + y * y + z * z);
    const double b = std::abs(bracket(sh, n, x, y, z, P));
    if (b == 0.0) return -std::numeric_limits<double>::infinity();
    return P.log_pre + std::log(b);
}

PdeResidual check_pde_identity(const PotentialParams& params, double x, double y, double z,
                               double h) {
    if (!(h >= 1e-4 && h <= 1e-1)) {
        throw ConfigurationError("finite-difference step must lie in [1e-4, 1e-1]");
    }
    check_finite(x, y, z);
    const double K = kernel_eval(params, x, y, z);
    auto second = [&](double fm2, double fm1, double fp1, double fp2) {
        return (-fp2 + 16.0 * fp1 - 30.0 * K + 16.0 * fm1 - fm2) / (12.0 * h * h);
    };
    const double dxx = second(kernel_eval(params, x - 2 * h, y, z), kernel_eval(params, x - h, y, z),
                              kernel_eval(params, x + h, y, z), kernel_eval(params, x + 2 * h, y, z));
    const double dyy = second(kernel_eval(params, x, y - 2 * h, z), kernel_eval(params, x, y - h, z),
                              kernel_eval(params, x, y + h, z), kernel_eval(params, x, y + 2 * h, z));
    const double dzz = second(kernel_eval(params, x, y, z - 2 * h), kernel_eval(params, x, y, z - h),
                              kernel_eval(params, x, y, z + h), kernel_eval(params, x, y, z + 2 * h));
    const double vx = params.potential(x) * K;
    const double vy = params.potential(y) * K;
    const double vz = params.potential(z) * K;
    const double hx = -dxx + vx, hy = -dyy + vy, hz = -dzz + vz;
    const double scale = std::max({std::abs(dxx), std::abs(dyy), std::abs(dzz), std::abs(vx),
                                   std::abs(vy), std::abs(vz), std::abs(K)});
    return {hx - hy, hx - hz, scale};
}

double decay_rate(const PotentialParams& params, double rho) {
    // the Ai argument grows like (L/2) r^2, so Ai decays like exp(-(2/3)(L/2)^{3/2} r^3)
    return 2.0 * rho / 3.0 * std::sqrt(params.lambda() / 8.0);
}

DecayEnvelope::DecayEnvelope(PotentialParams params, double y, double rho, int n, double C,
                             double r_fit)
    : params_(params), y_(y), rho_(rho), n_(n), C_(C), r_fit_(r_fit) {
    if (!(rho > 0.0 && rho < 1.0)) throw ConfigurationError("envelope rho must lie in (0, 1)");
    if (n < 0 || n > 2) throw ConfigurationError("envelope order must satisfy n <= 2");
    if (!(C > 0.0)) throw ConfigurationError("envelope constant must be positive");
}

double DecayEnvelope::rate() const noexcept { return decay_rate(params_, rho_); }

double DecayEnvelope::log_bound(double x, double z) const {
    const double r2 = x * x + z * z;
    return std::log(C_) - rate() * r2 * std::sqrt(r2);
}

double DecayEnvelope::operator()(double x, double z) const { return std::exp(log_bound(x, z)); }

double DecayEnvelope::truncation_radius(double eps) const {
    if (!(eps > 0.0)) throw ConfigurationError("truncation threshold must be positive");
    if (C_ <= eps) return 0.0;
    return std::cbrt(std::log(C_ / eps) / rate());
}

double DecayEnvelope::tail_bound(double R, double sup_f) const {
    if (!(R > 0.0)) return std::numeric_limits<double>::infinity();
    // int_R^inf exp(-c t^3) dt <= exp(-c R^3) / (3 c R^2), both sides
    const double c = rate();
    return 2.0 * sup_f * C_ * std::exp(-c * R * R * R) / (3.0 * c * R * R);
}

DecayEnvelope decay_envelope(const PotentialParams& params, double y, double rho, int n) {
    if (!(rho > 0.0 && rho < 1.0)) throw ConfigurationError("envelope rho must lie in (0, 1)");
    if (n < 0 || n > 2) throw ConfigurationError("envelope order must satisfy n <= 2");
    if (!std::isfinite(y)) throw DomainError("envelope y must be finite");
    const double c = decay_rate(params, rho);
    auto weighted = [&](double r, double th) {
        const double x = r * std::cos(th), z = r * std::sin(th);
        return log_abs_x_derivative(params, n, x, y, z) + c * r * r * r;
    };
    const double dth = 2.0 * std::numbers::pi / fit_angles;

    double best = -std::numeric_limits<double>::infinity();
    double best_r = 0.0, best_th = 0.0;
    double ring_prev = -std::numeric_limits<double>::infinity();
    double r_fit = fit_radius;
    for (int i = 0;; ++i) {
        const double r = i * fit_dr;
        double ring = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < fit_angles; ++j) {
            const double v = weighted(r, j * dth);
            ring = std::max(ring, v);
            if (v > best) {
                best = v;
                best_r = r;
                best_th = j * dth;
            }
        }
        // the weighted magnitude must have peaked and dropped well below its
        // maximum before the scan stops
        if (r >= fit_radius && ring < ring_prev && ring < best - 5.0) {
            r_fit = r;
            break;
        }
        ring_prev = ring;
        if (r > 200.0) throw ConsistencyError("decay envelope fit did not find the peak");
    }
    // local refinement around the largest grid sample
    for (int pass = 0; pass < 3; ++pass) {
        const double hr = fit_dr / (1 << pass), ht = dth / (1 << pass);
        const double r0 = best_r, t0 = best_th;
        for (int a = -4; a <= 4; ++a) {
            for (int b = -4; b <= 4; ++b) {
                const double r = std::max(0.0, r0 + a * hr / 4.0);
                const double th = t0 + b * ht / 4.0;
                const double v = weighted(r, th);
                if (v > best) {
                    best = v;
                    best_r = r;
                    best_th = th;
                }
            }
        }
    }
    return {params, y, rho, n, safety * std::exp(best), r_fit};
}

}  // namespace quartic::kernel
