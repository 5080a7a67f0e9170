#include "quartic/airy.hpp"

#include "quartic/errors.hpp"
#include "quartic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

namespace quartic::airy {

namespace {

using quad = __float128;

// Ai(0) and -Ai'(0) split into a double head and a double tail so they can be
// assembled in any working precision.
constexpr double ai0_hi = 0.3550280538878172;
constexpr double ai0_lo = 2.05233632436212e-17;
constexpr double aip0_hi = 0.2588194037928068;
constexpr double aip0_lo = -2.522243111610832e-17;

template <class T>
constexpr T epsilon_of() {
    if constexpr (std::is_same_v<T, quad>) {
        return T(1) / (T(1ULL << 56) * T(1ULL << 56));  // 2^-112
    } else {
        return std::numeric_limits<T>::epsilon();
    }
}

template <class T>
T abs_of(T v) {
    return v < T(0) ? -v : v;
}

struct SeriesResult {
    double ai;
    double ai_prime;
    double bound;
};

// Maclaurin series of Ai = c1 f - c2 g with f, g the two power-series
// solutions of w'' = x w normalised by f(0) = 1, g'(0) = 1.
template <class T>
SeriesResult maclaurin(double xd) {
    const T x = xd;
    const T y = x * x * x;
    const T c1 = T(ai0_hi) + T(ai0_lo);
    const T c2 = T(aip0_hi) + T(aip0_lo);
    const T eps = epsilon_of<T>();

    // f = 1 + sum_{k>=1} sf_k y,   f' = x^2 sum_{k>=1} 3k sf_k,  sf_k = a_k y^{k-1}
    // g = x sum_{k>=0} tg_k,       g' = sum_{k>=0} (3k+1) tg_k,  tg_k = b_k y^k
    T sf = T(1) / T(6);
    T tg = T(1);
    T f = T(1);
    T fp_sum = T(0);
    T g_sum = T(1);
    T gp = T(1);
    T abs_ai = c1;  // sum of |terms| in the Ai combination
    T abs_aip = c2;
    T round_ai = T(0);
    T round_aip = T(0);
    T trunc_ai = T(0);
    T trunc_aip = T(0);
    const T x2 = x * x;
    const T ax = abs_of(x);
    for (int k = 1; k < 400; ++k) {
        tg = tg * y / (T(3 * k) * T(3 * k + 1));
        const T fk = sf * y;
        const T fpk = T(3 * k) * sf * x2;
        const T gk = tg;
        const T gpk = T(3 * k + 1) * tg;
        f += fk;
        fp_sum += fpk;
        g_sum += gk;
        gp += gpk;

        const T mag_ai = c1 * abs_of(fk) + c2 * ax * abs_of(gk);
        const T mag_aip = c1 * abs_of(fpk) + c2 * abs_of(gpk);
        abs_ai += mag_ai;
        abs_aip += mag_aip;
        round_ai += mag_ai * T(3 * k + 6) * eps;
        round_aip += mag_aip * T(3 * k + 6) * eps;

        sf = sf * y / (T(3 * k + 2) * T(3 * k + 3));
        const T ratio = abs_of(y) / (T(3 * k + 2) * T(3 * k + 3));
        if (ratio < T(0.5)) {
            // remaining terms form a series dominated by a geometric one with ratio < 1/2
            const T next_ai = c1 * abs_of(sf * y) + c2 * ax * abs_of(tg * y) / T((3 * k + 3) * (3 * k + 4));
            const T next_aip = c1 * T(3 * k + 3) * abs_of(sf) * x2 + c2 * T(3 * k + 4) * abs_of(tg * y) / T((3 * k + 3) * (3 * k + 4));
            if (next_ai <= eps * abs_ai && next_aip <= eps * abs_aip) {
                trunc_ai = T(2) * next_ai;
                trunc_aip = T(2) * next_aip;
                break;
            }
        }
    }
    const T ai = c1 * f - c2 * x * g_sum;
    const T aip = c1 * fp_sum - c2 * gp;
    const double ai_d = static_cast<double>(ai);
    const double aip_d = static_cast<double>(aip);
    constexpr double unit = std::numeric_limits<double>::epsilon() / 2;
    const double bound_ai = static_cast<double>(round_ai + trunc_ai + T(4) * eps * abs_ai) + unit * std::abs(ai_d);
    const double bound_aip = static_cast<double>(round_aip + trunc_aip + T(4) * eps * abs_aip) + unit * std::abs(aip_d);
    return {ai_d, aip_d, std::max(bound_ai, bound_aip)};
}

struct AsymptoticSums {
    double zeta;
    double ai_sum;   // 1 + sum d_k x^{-3k/2}
    double aip_sum;  // 1 + sum e_k x^{-3k/2}
    double rel_error;
};

// Optimally truncated asymptotic series for x > 0:
//   Ai(x)  ~ exp(-zeta) / (2 sqrt(pi) x^{1/4}) * sum d_k x^{-3k/2}
//   Ai'(x) ~ -x^{1/4} exp(-zeta) / (2 sqrt(pi)) * sum e_k x^{-3k/2}
// with d_k = Gamma(3k+1/2) / ((-9)^k (2k)! sqrt(pi)) and e_k = -(6k+1)/(6k-1) d_k.
AsymptoticSums asymptotic_sums(double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double z = 1.0 / (x * std::sqrt(x));
    double d = 1.0;
    double ai_sum = 1.0;
    double aip_sum = 1.0;
    double abs_sum = 1.0;
    double omitted = 0.0;
    int k = 0;
    for (; k < 200; ++k) {
        const double kk = k;
        const double next = d * (3 * kk + 0.5) * (3 * kk + 1.5) * (3 * kk + 2.5) /
                            (-9.0 * (2 * kk + 1) * (2 * kk + 2)) * z;
        if (std::abs(next) >= std::abs(d)) {
            omitted = std::abs(next);
            break;
        }
        if (std::abs(next) <= eps * std::abs(ai_sum)) {
            omitted = std::abs(next);
            break;
        }
        const double e = -(6 * (kk + 1) + 1) / (6 * (kk + 1) - 1) * next;
        ai_sum += next;
        aip_sum += e;
        abs_sum += std::abs(e);
        d = next;
    }
    const double rel = (2.0 * omitted + (k + 2) * eps * abs_sum) /
                       std::min(std::abs(ai_sum), std::abs(aip_sum));
    return {2.0 / 3.0 * x * std::sqrt(x), ai_sum, aip_sum, rel};
}

void check_tol(double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-4)) {
        throw ConfigurationError("Airy evaluation tolerance must lie in [1e-14, 1e-4], got " +
                                 std::to_string(tol));
    }
}

void check_x(double x) {
    if (!std::isfinite(x)) throw DomainError("Airy argument must be finite");
}

constexpr double inv_two_sqrt_pi = 0.5 * std::numbers::inv_sqrtpi;

}  // namespace

AiryValue ai_series(double x) {
    check_x(x);
    const auto r = maclaurin<long double>(x);
    return {x, r.ai, r.ai_prime, r.bound};
}

AiryValue ai_asymptotic(double x) {
    check_x(x);
    if (!(x > 0.0)) throw DomainError("asymptotic branch requires x > 0");
    const auto s = asymptotic_sums(x);
    const double q = std::sqrt(std::sqrt(x));
    const double decay = std::exp(-s.zeta);
    const double ai = decay * inv_two_sqrt_pi / q * s.ai_sum;
    const double aip = -decay * inv_two_sqrt_pi * q * s.aip_sum;
    const double bound = s.rel_error * std::max(std::abs(ai), std::abs(aip)) +
                         std::numeric_limits<double>::min();
    return {x, ai, aip, bound};
}

AiryValue ai(double x, double tol) {
    check_tol(tol);
    check_x(x);
    if (x > CROSSOVER) {
        const auto v = ai_asymptotic(x);
        if (v.abs_error_bound <= tol) return v;
    }
    // beyond -NEGATIVE_LIMIT the long double sum cannot meet small tolerances
    auto r = x < -NEGATIVE_LIMIT ? maclaurin<quad>(x) : maclaurin<long double>(x);
    if (r.bound > tol) r = maclaurin<quad>(x);
    if (r.bound > tol) {
        throw DomainError("cannot certify Ai(" + std::to_string(x) + ") to tolerance " +
                          std::to_string(tol));
    }
    return {x, r.ai, r.ai_prime, r.bound};
}

ScaledAiry ai_scaled(double x) {
    check_x(x);
    if (x > CROSSOVER) {
        const auto s = asymptotic_sums(x);
        const double q = std::sqrt(std::sqrt(x));
        return {inv_two_sqrt_pi / q * s.ai_sum, -inv_two_sqrt_pi * q * s.aip_sum, s.zeta,
                s.rel_error};
    }
    const auto r = maclaurin<long double>(x);
    if (x <= 0.0) {
        const double mag = std::max(std::abs(r.ai), std::numeric_limits<double>::min());
        return {r.ai, r.ai_prime, 0.0, r.bound / mag};
    }
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double grow = std::exp(zeta);
    return {r.ai * grow, r.ai_prime * grow, zeta, r.bound / std::abs(r.ai)};
}

double gamma_half_ratio(int n) {
    if (n < 0) throw DomainError("gamma_half_ratio requires n >= 0");
    double r = 1.0;
    for (int j = 1; j <= n; ++j) r = r * (2 * j - 1) / 2;
    return r;
}

double gamma_half(int n) {
    return gamma_half_ratio(n) * std::sqrt(std::numbers::pi);
}

namespace {

using Poly = std::vector<double>;

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
    return d;
}

Poly shift_up(const Poly& p, double factor) {  // factor * X * p
    if (p.empty()) return {};
    Poly out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = factor * p[i];
    return out;
}

Poly add(const Poly& a, const Poly& b, double fb = 1.0) {
    Poly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += fb * b[i];
    return out;
}

Poly scale(const Poly& a, double f) {
    Poly out(a);
    for (auto& v : out) v *= f;
    return out;
}

// d/dX of alpha A^2 + beta A A' + gamma A'^2 with A = Ai(cX):
// dA/dX = c A', dA'/dX = c^2 X A.
QuadraticForm differentiate(const QuadraticForm& q, double c) {
    QuadraticForm out;
    out.alpha = add(derivative(q.alpha), shift_up(q.beta, c * c));
    out.beta = add(add(derivative(q.beta), scale(q.alpha, 2.0 * c)), shift_up(q.gamma, 2.0 * c * c));
    out.gamma = add(derivative(q.gamma), scale(q.beta, c));
    return out;
}

double horner(const Poly& p, double x) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

double horner_abs(const Poly& p, double x) {
    double v = 0.0;
    const double ax = std::abs(x);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * ax + std::abs(*it);
    return v;
}

}  // namespace

QuadraticForm moment_closed_form(int n) {
    if (n < 0) throw DomainError("moment order must be nonnegative");
    const double c = std::pow(2.0, -2.0 / 3.0);
    QuadraticForm q;
    q.alpha = {std::pow(2.0, 2.0 / 3.0) * std::numbers::pi};
    for (int i = 0; i < n; ++i) {
        const QuadraticForm d2 = differentiate(differentiate(q, c), c);
        q.alpha = add(d2.alpha, shift_up(q.alpha, 1.0), -1.0);
        q.beta = add(d2.beta, shift_up(q.beta, 1.0), -1.0);
        q.gamma = add(d2.gamma, shift_up(q.gamma, 1.0), -1.0);
    }
    return q;
}

MomentValue phi_n_quadrature(int n, double X, double tol) {
    if (n < 0) throw DomainError("moment order must be nonnegative");
    check_x(X);
    if (!(tol > 0.0)) throw ConfigurationError("quadrature tolerance must be positive");
    const double two_n = 2.0 * n;
    // integrand after t = s^2: 2 s^{2n} Ai(s^2 + X)
    auto f = [=](double s) {
        const double xi = s * s + X;
        const auto a = ai_scaled(xi);
        return 2.0 * std::pow(s, two_n) * a.ai * std::exp(-a.log_scale);
    };
    // bound Ai(xi) <= exp(-(2/3) xi^{3/2}) / (2 sqrt(pi) xi^{1/4}) for xi > 0; the
    // tail of a log-concave decaying integrand is at most g(R) / |(log g)'(R)|.
    auto tail = [=](double R) {
        const double xi = R * R + X;
        if (R <= 0.0 || xi < 1.0) return std::numeric_limits<double>::infinity();
        const double rate = 2.0 * R * std::sqrt(xi) + 0.5 * R / xi - two_n / R;
        if (rate <= 1.0) return std::numeric_limits<double>::infinity();
        const double g = 2.0 * std::pow(R, two_n) * inv_two_sqrt_pi *
                         std::exp(-2.0 / 3.0 * xi * std::sqrt(xi)) / std::sqrt(std::sqrt(xi));
        return g / rate;
    };
    const auto r = quadrature::integrate(f, quadrature::Domain::half_line, tail, tol);
    return {r.value, r.error_estimate + r.truncation_bound, false};
}

MomentValue phi_n_eval(int n, double X, double tol) {
    if (n < 0) throw DomainError("moment order must be nonnegative");
    check_x(X);
    if (n > MAX_CLOSED_FORM_ORDER) return phi_n_quadrature(n, X, tol);

    const QuadraticForm q = moment_closed_form(n);
    const double u = X * std::pow(2.0, -2.0 / 3.0);
    const auto a = ai_scaled(u);
    const double A = a.ai;
    const double P = a.ai_prime;
    const double terms = horner(q.alpha, X) * A * A + horner(q.beta, X) * A * P +
                         horner(q.gamma, X) * P * P;
    const double abs_terms = horner_abs(q.alpha, X) * A * A + horner_abs(q.beta, X) * std::abs(A * P) +
                             horner_abs(q.gamma, X) * P * P;
    const double decay = std::exp(-2.0 * a.log_scale);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t degree =
        std::max({q.alpha.size(), q.beta.size(), q.gamma.size()});
    const double err = (static_cast<double>(degree + 4) * eps + 2.0 * a.rel_error) * abs_terms * decay;
    MomentValue out{terms * decay, err, true};
    if (out.error_estimate > tol && out.error_estimate > 1e-12 * std::abs(out.value)) {
        return phi_n_quadrature(n, X, tol);
    }
    return out;
}

double phi_n(int n, double X, double tol) {
    return phi_n_eval(n, X, tol).value;
}

}  // namespace quartic::airy
