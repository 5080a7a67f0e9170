#include "quartic/oscillator.hpp"

#include "quartic/asymptotic_series.hpp"
#include "quartic/errors.hpp"
#include "quartic/ode.hpp"
#include "quartic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quartic {

namespace {

constexpr int series_terms = 20;
// log of the amplitude ratio between the decaying and the parasitic solution
// accumulated before the shooting data reach the turning point
constexpr double shooting_damping = 20.0;
constexpr double far_field_spacing = 0.02;
constexpr double far_field_margin = 2.0;
constexpr double x_far_limit = 400.0;

// S(x) = -(s/3) x^3 - q x with s = sqrt(lambda/2), q = a/(2s)
struct Exponent {
    double s;
    double q;

    explicit Exponent(const PotentialParams& p)
        : s(p.root_half_lambda()), q(p.a() / (2.0 * p.root_half_lambda())) {}
    double value(double x) const { return -(s / 3.0) * x * x * x - q * x; }
    double slope(double x) const { return -s * x * x - q; }
};

// psi = exp(S) w turns H psi = E psi into
//   w'' = 2 (s x^2 + q) w' + (2 s x - c) w,   c = E + q^2,
// whose second solution grows like exp(-2S) and so decays when integrating inward.
ode::Rhs make_rhs(const Exponent& ex, double energy) {
    const double c = energy + ex.q * ex.q;
    return [s = ex.s, q = ex.q, c](double x, const ode::Vec2& y) {
        return ode::Vec2{y[1], 2.0 * (s * x * x + q) * y[1] + (2.0 * s * x - c) * y[0]};
    };
}

double second_derivative(const Exponent& ex, double energy, double x, double w, double dw) {
    const double c = energy + ex.q * ex.q;
    return 2.0 * (ex.s * x * x + ex.q) * dw + (2.0 * ex.s * x - c) * w;
}

struct Truncation {
    std::size_t terms = 0;
    double error = 0.0;
};

// Terms of sum L_n x^{-n/2} are kept up to N; the error of that choice is
// estimated by the largest of the next four omitted terms, and N minimises it.
Truncation truncate_log_series(const std::vector<double>& L, double x) {
    const double r = 1.0 / std::sqrt(x);
    std::vector<double> t(L.size() + 1, 0.0);
    double p = 1.0;
    for (std::size_t n = 1; n <= L.size(); ++n) {
        p *= r;
        t[n] = std::abs(L[n - 1]) * p;
    }
    Truncation best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t N = 0; N + 4 <= L.size(); ++N) {
        const double e = std::max({t[N + 1], t[N + 2], t[N + 3], t[N + 4]});
        if (e < best.error) best = {N, e};
    }
    return best;
}

// log U and d(log U)/dx for U = exp(sum L_n x^{-n/2})
std::pair<double, double> log_factor(const std::vector<double>& L, double x) {
    const double r = 1.0 / std::sqrt(x);
    double v = 0.0, dv = 0.0, p = 1.0;
    for (std::size_t n = 1; n <= L.size(); ++n) {
        p *= r;
        v += L[n - 1] * p;
        dv -= 0.5 * static_cast<double>(n) * L[n - 1] * p / x;
    }
    return {v, dv};
}

// w = x^{-1} U and w' from the truncated series
ode::Vec2 series_data(const std::vector<double>& L, double x) {
    const auto [v, dv] = log_factor(L, x);
    const double U = std::exp(v);
    return {U / x, U * (dv / x - 1.0 / (x * x))};
}

std::vector<double> truncated(const std::vector<double>& L, std::size_t n) {
    return {L.begin(), L.begin() + static_cast<std::ptrdiff_t>(std::min(n, L.size()))};
}

// Outer turning point, or the potential minimum if E lies below it.
double turning_point(const PotentialParams& p, double energy) {
    const double a = p.a(), lam = p.lambda();
    const double disc = a * a + 2.0 * lam * energy;
    const double x_min = a < 0.0 ? std::sqrt(-a / lam) : 0.0;
    if (disc <= 0.0) return x_min;
    const double x2 = (-a + std::sqrt(disc)) / lam;
    return std::max(x_min, x2 > 0.0 ? std::sqrt(x2) : 0.0);
}

double shooting_start(const PotentialParams& p, const Exponent& ex, double energy) {
    const double xt = std::max(turning_point(p, energy),
                               ex.q < 0.0 ? std::sqrt(-ex.q / ex.s) : 0.0);
    double X = xt + 0.5;
    while (ex.value(xt) - ex.value(X) < shooting_damping) X += 0.05;
    return X;
}

double rtol_for(double tol) { return std::max(tol / 100.0, 1e-13); }

ode::Options integrator_options(const PotentialParams& p, double energy, double tol) {
    ode::Options o;
    o.rtol = rtol_for(tol);
    o.atol = 1e-300;
    const double kinetic = std::max(1.0, energy - p.potential_minimum());
    o.max_step = std::min(0.05, 0.5 / std::sqrt(kinetic));
    return o;
}

struct Shot {
    std::vector<ode::Sample> path;  // from X inward to 0
    std::vector<double> log_tail;   // truncated L used for the initial data
    double series_error = 0.0;
};

Shot shoot(const PotentialParams& p, double energy, double X, double tol) {
    const Exponent ex(p);
    const auto L = series::log_series(series::ode_series_coeffs(p, energy, series_terms));
    const Truncation tr = truncate_log_series(L, X);
    Shot out;
    out.log_tail = truncated(L, tr.terms);
    out.series_error = tr.error;
    out.path = ode::integrate(make_rhs(ex, energy), X, series_data(out.log_tail, X), 0.0,
                              integrator_options(p, energy, tol));
    return out;
}

int sign_changes(const std::vector<ode::Sample>& path) {
    int n = 0;
    double last = 0.0;
    for (const auto& s : path) {
        const double v = s.y[0];
        if (v == 0.0) continue;
        if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++n;
        last = v;
    }
    return n;
}

int count_from_shot(const Exponent& ex, const Shot& shot) {
    const auto& origin = shot.path.back();
    const double psi0 = origin.y[0];
    const double dpsi0 = origin.y[1] - ex.q * origin.y[0];
    return 2 * sign_changes(shot.path) + (psi0 * dpsi0 > 0.0 ? 1 : 0);
}

void check_tol(double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-6)) {
        throw ConfigurationError("eigenproblem tolerance must lie in [1e-12, 1e-6]");
    }
}

struct Bracket {
    double lo;
    double hi;
};

// [lo, hi] with count(lo) = k and count(hi) = k + 1. lo_hint must satisfy
// count(lo_hint) <= k.
Bracket find_bracket(const PotentialParams& p, int k, double lo_hint, double tol) {
    auto count = [&](double e) { return eigenvalue_count_below(p, e, tol); };
    double lo = lo_hint;
    double width = std::max(1.0, std::abs(lo_hint));
    double hi = lo + width;
    int guard = 0;
    while (count(hi) <= k) {
        lo = hi;
        width *= 2.0;
        hi = lo + width;
        if (++guard > 60) {
            throw BracketingError("no eigenvalue found above the scan start", k, lo_hint, hi);
        }
    }
    for (int it = 0; it < 200; ++it) {
        const int clo = count(lo);
        if (clo == k) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            throw BracketingError("eigenvalues closer than double precision resolves", k, lo, hi);
        }
        (count(mid) <= k ? lo : hi) = mid;
    }
    for (int it = 0; it < 200; ++it) {
        if (count(hi) == k + 1 && count(lo) == k) return {lo, hi};
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (count(mid) <= k ? lo : hi) = mid;
    }
    if (count(lo) == k && count(hi) == k + 1) return {lo, hi};
    throw BracketingError("node-count bisection did not isolate the eigenvalue", k, lo, hi);
}

// Brent's method on the matching condition at the origin.
double refine(const PotentialParams& p, int k, Bracket br, double tol) {
    const Exponent ex(p);
    const double X = shooting_start(p, ex, br.hi);
    auto F = [&](double e) {
        const Shot shot = shoot(p, e, X, tol);
        const auto& y = shot.path.back().y;
        return k % 2 == 0 ? y[1] - ex.q * y[0] : y[0];
    };
    double a = br.lo, b = br.hi;
    double fa = F(a), fb = F(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketingError("matching condition does not change sign across the bracket", k, a,
                              b);
    }
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double xtol = 0.25 * tol * (1.0 + std::abs(b));
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= xtol || fb == 0.0) return b;
        if (std::abs(e) >= xtol && std::abs(fa) > std::abs(fb)) {
            double pp, qq;
            const double s = fb / fa;
            if (a == c) {
                pp = 2.0 * m * s;
                qq = 1.0 - s;
            } else {
                const double q0 = fa / fc, r = fb / fc;
                pp = s * (2.0 * m * q0 * (q0 - r) - (b - a) * (r - 1.0));
                qq = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pp > 0.0) qq = -qq;
            pp = std::abs(pp);
            if (2.0 * pp < std::min(3.0 * m * qq - std::abs(xtol * qq), std::abs(e * qq))) {
                e = d;
                d = pp / qq;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > xtol ? d : (m > 0.0 ? xtol : -xtol);
        fb = F(b);
    }
    throw BracketingError("root refinement did not converge", k, br.lo, br.hi);
}

// Smallest X beyond the shooting start at which the truncated large-x series
// is accurate to tol/10 relative.
double far_start(const PotentialParams& p, double energy, double tol) {
    const Exponent ex(p);
    const auto L = series::log_series(series::ode_series_coeffs(p, energy, series_terms));
    double X = shooting_start(p, ex, energy);
    while (truncate_log_series(L, X).error >= tol / 10.0) {
        X += 0.25;
        if (X > x_far_limit) {
            std::ostringstream msg;
            msg << "large-x series for E = " << energy << " does not reach relative accuracy "
                << tol / 10.0 << " below x = " << x_far_limit;
            throw ConsistencyError(msg.str());
        }
    }
    return X;
}

struct Hermite {
    double w, dw;
};

Hermite quintic(const GridPoint& g0, double s0, const GridPoint& g1, double s1, double x) {
    const double h = g1.x - g0.x;
    const double t = (x - g0.x) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double H0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    const double H1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    const double H2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double H3 = 0.5 * t3 - t4 + 0.5 * t5;
    const double H4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    const double H5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    const double D0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    const double D1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    const double D2 = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
    const double D3 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;
    const double D4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    const double D5 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
    const double w = g0.w * H0 + h * g0.dw * H1 + h * h * (s0 * H2 + s1 * H3) + h * g1.dw * H4 +
                     g1.w * H5;
    const double dw = (g0.w * D0 + h * g0.dw * D1 + h * h * (s0 * D2 + s1 * D3) +
                       h * g1.dw * D4 + g1.w * D5) /
                      h;
    return {w, dw};
}

std::vector<GridPoint> build_grid(const std::vector<ode::Sample>& path, double thin_from,
                                  Parity parity, double q) {
    std::vector<GridPoint> grid;
    grid.reserve(path.size());
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const GridPoint g{it->x, it->y[0], it->y[1]};
        const bool last = std::next(it) == path.rend();
        if (!grid.empty() && g.x > thin_from && !last &&
            g.x - grid.back().x < far_field_spacing) {
            continue;
        }
        if (!grid.empty() && g.x <= grid.back().x) continue;
        grid.push_back(g);
    }
    // exact parity conditions at the origin
    if (parity == Parity::odd) {
        grid.front().w = 0.0;
    } else {
        grid.front().dw = q * grid.front().w;
    }
    return grid;
}

double psi_from_w(const Exponent& ex, double x, double w) { return std::exp(ex.value(x)) * w; }

double grid_max_abs(const EigenState& st) {
    const Exponent ex(st.params());
    const auto& g = st.grid();
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        m = std::max(m, std::abs(psi_from_w(ex, g[i].x, g[i].w)));
        if (i + 1 < g.size()) {
            for (int j = 1; j < 4; ++j) {
                const double x = g[i].x + 0.25 * j * (g[i + 1].x - g[i].x);
                m = std::max(m, std::abs(eval_eigenfunction(st, x)));
            }
        }
    }
    return 1.001 * m;
}

EigenState assemble(const PotentialParams& p, int k, double energy, double tol) {
    const Exponent ex(p);
    const double X = std::max(far_start(p, energy, tol), shooting_start(p, ex, energy));
    const Shot shot = shoot(p, energy, X, tol);
    const double thin_from = turning_point(p, energy) + far_field_margin;
    const Parity parity = k % 2 == 0 ? Parity::even : Parity::odd;
    auto grid = build_grid(shot.path, thin_from, parity, ex.q);
    auto B = series::ode_series_coeffs(p, energy, series_terms);

    EigenState draft(p, k, energy, grid, B, shot.log_tail, tol, 0.0, 0.0);
    const double max_abs = grid_max_abs(draft);
    EigenState sized(p, k, energy, grid, B, shot.log_tail, tol, 0.0, max_abs);
    const double nsq = norm_squared(sized, tol);
    return {p, k, energy, std::move(grid), std::move(B), shot.log_tail, tol, nsq, max_abs};
}

}  // namespace

EigenState::EigenState(PotentialParams params, int k, double energy, std::vector<GridPoint> grid,
                       std::vector<double> tail_coeffs, std::vector<double> log_tail, double tol,
                       double norm_sq, double max_abs)
    : params_(params),
      k_(k),
      energy_(energy),
      grid_(std::move(grid)),
      tail_(std::move(tail_coeffs)),
      log_tail_(std::move(log_tail)),
      tol_(tol),
      norm_sq_(norm_sq),
      max_abs_(max_abs) {
    if (k < 0) throw ConfigurationError("state index must be nonnegative");
    if (grid_.size() < 2 || grid_.front().x != 0.0) {
        throw ConsistencyError("eigenfunction grid must start at x = 0 and hold two points");
    }
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        if (!(grid_[i].x > grid_[i - 1].x)) {
            throw ConsistencyError("eigenfunction grid must be strictly ascending");
        }
    }
}

std::pair<double, double> EigenState::rescaled(double x) const {
    if (!(x >= 0.0)) throw DomainError("rescaled eigenfunction is defined for x >= 0");
    if (x >= x_max()) {
        const auto y = series_data(log_tail_, x);
        return {y[0], y[1]};
    }
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x,
                                     [](double v, const GridPoint& g) { return v < g.x; });
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const GridPoint& g0 = grid_[i];
    const GridPoint& g1 = grid_[i + 1];
    const Exponent ex(params_);
    const double s0 = second_derivative(ex, energy_, g0.x, g0.w, g0.dw);
    const double s1 = second_derivative(ex, energy_, g1.x, g1.w, g1.dw);
    const Hermite h = quintic(g0, s0, g1, s1, x);
    return {h.w, h.dw};
}

double EigenState::series_factor(double x) const {
    if (!(x > 0.0)) throw DomainError("series factor requires x > 0");
    return std::exp(log_factor(log_tail_, x).first);
}

double EigenState::value_at_origin() const noexcept { return grid_.front().w; }

double EigenState::slope_at_origin() const noexcept {
    const Exponent ex(params_);
    return grid_.front().dw - ex.q * grid_.front().w;
}

double EigenState::log_envelope(double x) const noexcept { return Exponent(params_).value(x); }

int eigenvalue_count_below(const PotentialParams& params, double energy, double tol) {
    if (!std::isfinite(energy)) throw DomainError("energy must be finite");
    const Exponent ex(params);
    const double X = shooting_start(params, ex, energy);
    return count_from_shot(ex, shoot(params, energy, X, tol));
}

EigenState solve_state(const PotentialParams& params, int k, double tol) {
    check_tol(tol);
    if (k < 0 || k > 40) throw ConfigurationError("state index must lie in [0, 40]");
    const Bracket br = find_bracket(params, k, params.potential_minimum(), tol);
    return assemble(params, k, refine(params, k, br, tol), tol);
}

std::vector<EigenState> solve_eigenproblem(const PotentialParams& params, int k_max, double tol) {
    check_tol(tol);
    if (k_max < 0 || k_max > 40) throw ConfigurationError("k_max must lie in [0, 40]");
    std::vector<EigenState> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    double lo = params.potential_minimum();
    for (int k = 0; k <= k_max; ++k) {
        const Bracket br = find_bracket(params, k, lo, tol);
        out.push_back(assemble(params, k, refine(params, k, br, tol), tol));
        lo = br.hi;
    }
    return out;
}

double eval_eigenfunction(const EigenState& state, double x) {
    if (!std::isfinite(x)) throw DomainError("eigenfunction argument must be finite");
    const double ax = std::abs(x);
    const double w = state.rescaled(ax).first;
    const double v = std::exp(state.log_envelope(ax)) * w;
    return (x < 0.0 && state.parity() == Parity::odd) ? -v : v;
}

double eval_derivative(const EigenState& state, double x) {
    if (!std::isfinite(x)) throw DomainError("eigenfunction argument must be finite");
    const double ax = std::abs(x);
    const Exponent ex(state.params());
    const auto [w, dw] = state.rescaled(ax);
    const double d = std::exp(ex.value(ax)) * (dw + ex.slope(ax) * w);
    return (x < 0.0 && state.parity() == Parity::even) ? -d : d;
}

std::pair<PotentialParams, EigenState> scale_state(const EigenState& state,
                                                   const PotentialParams& params, double beta) {
    if (!(state.params() == params)) {
        throw ConfigurationError("scale_state: parameters do not match the state");
    }
    const PotentialParams scaled = params.scaled(beta);
    if (beta == 1.0) return {scaled, state};
    const double fx = std::pow(beta, 1.0 / 6.0);
    const double fw = 1.0 / fx;
    const double fdw = std::pow(beta, -1.0 / 3.0);
    std::vector<GridPoint> grid;
    grid.reserve(state.grid().size());
    for (const auto& g : state.grid()) grid.push_back({fx * g.x, fw * g.w, fdw * g.dw});
    auto rescale_tail = [beta](const std::vector<double>& c) {
        std::vector<double> out(c.size());
        for (std::size_t n = 1; n <= c.size(); ++n) {
            out[n - 1] = c[n - 1] * std::pow(beta, static_cast<double>(n) / 12.0);
        }
        return out;
    };
    EigenState out(scaled, state.k(), state.energy() * std::pow(beta, -1.0 / 3.0),
                   std::move(grid), rescale_tail(state.tail_coeffs()),
                   rescale_tail(state.log_tail_coeffs()), state.tol(), state.norm_sq() * fw,
                   state.max_abs() * fw);
    return {scaled, std::move(out)};
}

double norm_squared(const EigenState& state, double tol) {
    if (!(tol > 0.0)) throw ConfigurationError("norm tolerance must be positive");
    const Exponent ex(state.params());
    const auto& g = state.grid();
    double rough = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double f0 = psi_from_w(ex, g[i - 1].x, g[i - 1].w);
        const double f1 = psi_from_w(ex, g[i].x, g[i].w);
        rough += 0.5 * (g[i].x - g[i - 1].x) * (f0 * f0 + f1 * f1);
    }
    quadrature::Options opts;
    opts.initial_pieces = 8 + 2 * state.k();
    const double X = state.x_max();
    const auto res = quadrature::integrate(
        [&](double x) {
            const double v = eval_eigenfunction(state, x);
            return v * v;
        },
        quadrature::Domain::half_line, X, 0.125 * tol * rough, opts);
    // beyond X, psi^2 <= U^2 x^{-2} exp(2S) and exp(2S) falls at rate >= 2|S'(X)|
    const double U = state.series_factor(X);
    const double tail = U * U * std::exp(2.0 * ex.value(X)) / (X * X * 2.0 * std::abs(ex.slope(X)));
    return 2.0 * (res.value + tail);
}

int node_count(const EigenState& state) {
    int n = 0;
    double last = 0.0;
    for (const auto& g : state.grid()) {
        if (g.x == 0.0 || g.w == 0.0) continue;
        if (last != 0.0 && (g.w > 0.0) != (last > 0.0)) ++n;
        last = g.w;
    }
    return 2 * n + (state.parity() == Parity::odd ? 1 : 0);
}

}  // namespace quartic
