#include "quartic/quadrature.hpp"

#include "quartic/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

namespace quartic::quadrature {

namespace {

// Kronrod abscissae/weights for the 15-point rule and the embedded 7-point
// Gauss weights (QUADPACK qk15).
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

Segment gk15(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const double sum = f1[j] + f2[j];
        resk += wgk[j] * sum;
        resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double ah = std::abs(half);
    resk *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    if (!std::isfinite(resk)) {
        throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    }
    return {a, b, resk, err};
}

void check_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw ConfigurationError("quadrature tolerance must be positive and finite");
    }
}

}  // namespace

QuadratureResult integrate_interval(const Integrand& f, double a, double b, double tol,
                                    const Options& opts) {
    check_tol(tol);
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integration limits must be finite");
    }
    QuadratureResult out;
    if (a == b) return out;

    const int pieces = std::max(1, opts.initial_pieces);
    std::vector<Segment> segs;
    segs.reserve(opts.max_subintervals + 2);
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + (b - a) * i / pieces;
        const double hi = (i + 1 == pieces) ? b : a + (b - a) * (i + 1) / pieces;
        segs.push_back(gk15(f, lo, hi));
    }
    out.evaluations = 15 * segs.size();

    auto totals = [&] {
        double v = 0.0;
        double e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
        return std::pair{v, e};
    };

    double value = 0.0;
    double error = 0.0;
    std::tie(value, error) = totals();
    // Bisection can raise the summed estimate; report the best state seen so
    // that a tighter tolerance, which replays the same path further, never
    // returns a larger error.
    double best_value = value;
    double best_error = error;
    while (best_error > tol) {
        if (segs.size() >= opts.max_subintervals) {
            std::ostringstream msg;
            msg << "quadrature subdivision limit (" << opts.max_subintervals
                << ") reached on [" << a << ", " << b << "]: estimate " << best_value
                << " with error " << best_error << " > tol " << tol;
            throw QuadratureError(msg.str(), best_value, best_error);
        }
        const auto worst = std::max_element(
            segs.begin(), segs.end(),
            [](const Segment& l, const Segment& r) { return l.error < r.error; });
        const double mid = 0.5 * (worst->a + worst->b);
        if (mid <= std::min(worst->a, worst->b) || mid >= std::max(worst->a, worst->b)) {
            throw QuadratureError("quadrature interval cannot be bisected further", best_value,
                                  best_error);
        }
        const Segment left = gk15(f, worst->a, mid);
        const Segment right = gk15(f, mid, worst->b);
        *worst = left;
        segs.push_back(right);
        out.evaluations += 30;
        std::tie(value, error) = totals();
        if (error < best_error) {
            best_value = value;
            best_error = error;
        }
    }
    out.value = best_value;
    out.error_estimate = best_error;
    return out;
}

QuadratureResult integrate(const Integrand& f, Domain domain, double radius, double tol,
                           const Options& opts) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw ConfigurationError("truncation radius must be finite and nonnegative");
    }
    QuadratureResult out;
    if (domain == Domain::half_line) {
        out = integrate_interval(f, 0.0, radius, tol, opts);
    } else {
        const Integrand folded = [&f](double t) { return f(t) + f(-t); };
        out = integrate_interval(folded, 0.0, radius, tol, opts);
        out.evaluations *= 2;
    }
    out.radius = radius;
    return out;
}

double truncation_radius(const TailBound& tail, double eps, double start) {
    if (!(eps > 0.0)) throw ConfigurationError("truncation threshold must be positive");
    double hi = std::max(start, 1e-3);
    int guard = 0;
    while (!(tail(hi) <= eps)) {
        hi *= 2.0;
        if (++guard > 60) throw ConfigurationError("tail bound never drops below threshold");
    }
    double lo = 0.0;
    if (tail(lo) <= eps) return 0.0;
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (tail(mid) <= eps) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

QuadratureResult integrate(const Integrand& f, Domain domain, const TailBound& tail, double tol,
                           const Options& opts) {
    check_tol(tol);
    // A truncation point fixed for every tol above TRUNCATION_FLOOR keeps the
    // domain, and so the refinement path, the same when tol is tightened.
    const double radius = truncation_radius(tail, 0.25 * std::min(tol, TRUNCATION_FLOOR));
    QuadratureResult out = integrate(f, domain, radius, 0.75 * tol, opts);
    out.truncation_bound = tail(radius);
    return out;
}

}  // namespace quartic::quadrature
