#include "quartic/verify.hpp"

#include "quartic/airy.hpp"
#include "quartic/errors.hpp"
#include "quartic/kernel.hpp"
#include "quartic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace quartic::verify {

namespace {

// rows enter the fitted constant when |lhs| exceeds this fraction of sup psi^2
constexpr double fit_threshold = 1e-8;
constexpr double moment_tol = 1e-12;

struct Integral {
    double value;
    double error;
    double truncation;
    std::size_t evaluations;
};

// Integral of f over the line or half line, truncated where the envelope
// tail (scaled by sup|psi|) falls below a quarter of tol_abs.
Integral envelope_integral(const quadrature::Integrand& f, quadrature::Domain domain,
                           const kernel::DecayEnvelope& env, double sup_f, double tol_abs,
                           int pieces) {
    const double share = domain == quadrature::Domain::full_line ? 1.0 : 0.5;
    const quadrature::TailBound tail = [&](double R) { return share * env.tail_bound(R, sup_f); };
    quadrature::Options opts;
    opts.initial_pieces = pieces;
    const auto r = quadrature::integrate(f, domain, tail, tol_abs, opts);
    return {r.value, r.error_estimate, r.truncation_bound, r.evaluations};
}

double quad_target(double tol, double lhs) {
    return 0.05 * tol * std::max(std::abs(lhs), RELATIVE_FLOOR);
}

void record(VerificationReport& rep, const Integral& in) {
    auto& q = rep.quadrature;
    q.max_error_estimate = std::max(q.max_error_estimate, in.error);
    q.max_truncation_bound = std::max(q.max_truncation_bound, in.truncation);
    q.evaluations += in.evaluations;
}

ResidualRow make_row(std::string label, std::vector<double> input, double lhs, double rhs) {
    ResidualRow r;
    r.label = std::move(label);
    r.input = std::move(input);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    r.rel_residual = relative_residual(lhs, rhs);
    return r;
}

void finish(VerificationReport& rep) {
    rep.passed = std::all_of(rep.rows.begin(), rep.rows.end(), [&](const ResidualRow& r) {
        return std::isfinite(r.rel_residual) && r.rel_residual <= rep.tolerance;
    });
}

void check_tol(double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw ConfigurationError("verification tolerance must lie in (0, 1)");
}

int pieces_for(const EigenState& st) { return 8 + 2 * st.k(); }

}  // namespace

std::string_view to_string(Identity id) {
    switch (id) {
        case Identity::product_formula: return "product_formula";
        case Identity::integral_equation: return "integral_equation";
        case Identity::kernel_expansion: return "kernel_expansion";
        case Identity::asymptotic_expansion: return "asymptotic_expansion";
        case Identity::pde_identity: return "pde_identity";
        case Identity::scaling: return "scaling";
    }
    return "unknown";
}

Identity identity_from_string(std::string_view name) {
    for (Identity id : {Identity::product_formula, Identity::integral_equation,
                        Identity::kernel_expansion, Identity::asymptotic_expansion,
                        Identity::pde_identity, Identity::scaling}) {
        if (to_string(id) == name) return id;
    }
    throw ConfigurationError("unknown identity '" + std::string(name) + "'");
}

double relative_residual(double lhs, double rhs) {
    const double den = std::max({std::abs(lhs), std::abs(rhs), RELATIVE_FLOOR});
    return std::abs(lhs - rhs) / den;
}

double envelope_rho(double tol) { return tol < 1e-9 ? 0.99 : 0.9; }

double solver_tol(double tol) { return std::clamp(tol * 1e-4, 1e-12, 1e-6); }

VerificationReport verify_product_formula(const EigenState& state,
                                          const std::vector<std::pair<double, double>>& points,
                                          double tol) {
    check_tol(tol);
    VerificationReport rep;
    rep.identity = Identity::product_formula;
    rep.params = state.params();
    rep.inputs = {{"k", state.k()}, {"energy", state.energy()}};
    rep.input_names = {"x", "y"};
    rep.tolerance = tol;
    rep.quadrature.rho = envelope_rho(tol);

    std::map<double, kernel::DecayEnvelope> envelopes;
    std::vector<double> ratios;
    const double sup_sq = state.max_abs() * state.max_abs();
    for (const auto& [x, y] : points) {
        auto it = envelopes.find(y);
        if (it == envelopes.end()) {
            it = envelopes
                     .emplace(y, kernel::decay_envelope(state.params(), y, rep.quadrature.rho, 0))
                     .first;
        }
        const double lhs = eval_eigenfunction(state, x) * eval_eigenfunction(state, y);
        const auto f = [&, x = x, y = y](double z) {
            return eval_eigenfunction(state, z) * kernel::kernel_eval(state.params(), x, y, z);
        };
        const Integral in = envelope_integral(f, quadrature::Domain::full_line, it->second,
                                              state.max_abs(), quad_target(tol, lhs),
                                              pieces_for(state));
        record(rep, in);
        ResidualRow row = make_row("point", {x, y}, lhs, in.value);
        row.quad_error = in.error + in.truncation;
        rep.rows.push_back(row);
        if (std::abs(lhs) > fit_threshold * sup_sq) ratios.push_back(in.value / lhs);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        const std::size_t n = ratios.size();
        rep.fitted_constant =
            n % 2 == 1 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
    }
    finish(rep);
    return rep;
}

VerificationReport verify_product_formula(const PotentialParams& params, int k,
                                          const std::vector<std::pair<double, double>>& points,
                                          double tol) {
    check_tol(tol);
    return verify_product_formula(solve_state(params, k, solver_tol(tol)), points, tol);
}

VerificationReport verify_integral_equation(const EigenState& state, const std::vector<double>& ys,
                                            double tol) {
    check_tol(tol);
    const bool odd = state.parity() == Parity::odd;
    VerificationReport rep;
    rep.identity = Identity::integral_equation;
    rep.params = state.params();
    rep.inputs = {{"k", state.k()}, {"energy", state.energy()}};
    rep.input_names = {"y"};
    rep.tolerance = tol;
    rep.quadrature.rho = envelope_rho(tol);
    const int order = odd ? 1 : 0;
    const double at_origin = odd ? state.slope_at_origin() : state.value_at_origin();

    for (double y : ys) {
        const auto env = kernel::decay_envelope(state.params(), y, rep.quadrature.rho, order);
        const double lhs = at_origin * eval_eigenfunction(state, y);
        // the x-derivative of the kernel at x = 0 is L s y z Ai(...)
        const auto f = [&](double z) {
            return eval_eigenfunction(state, z) *
                   kernel::kernel_x_derivative(state.params(), order, 0.0, y, z);
        };
        const Integral in = envelope_integral(f, quadrature::Domain::half_line, env,
                                              state.max_abs(), 0.5 * quad_target(tol, lhs),
                                              pieces_for(state));
        record(rep, in);
        ResidualRow row = make_row(odd ? "odd" : "even", {y}, lhs, 2.0 * in.value);
        row.quad_error = 2.0 * (in.error + in.truncation);
        rep.rows.push_back(row);
    }
    finish(rep);
    return rep;
}

VerificationReport verify_integral_equation(const PotentialParams& params, int m, Parity parity,
                                            const std::vector<double>& ys, double tol) {
    check_tol(tol);
    if (m < 0) throw ConfigurationError("integral equation index m must be nonnegative");
    const int k = parity == Parity::even ? 2 * m : 2 * m + 1;
    return verify_integral_equation(solve_state(params, k, solver_tol(tol)), ys, tol);
}

ExpansionValue kernel_expansion_partial_sum(const std::vector<EigenState>& states, int K_terms,
                                            double x, double y, double z) {
    if (K_terms < 0 || static_cast<std::size_t>(K_terms) > states.size()) {
        throw ConfigurationError("kernel expansion needs states 0..K_terms-1");
    }
    if (states.empty()) throw ConfigurationError("kernel expansion needs at least one state");
    double sum = 0.0;
    for (int k = 0; k < K_terms; ++k) {
        const EigenState& st = states[static_cast<std::size_t>(k)];
        if (st.k() != k) throw ConfigurationError("kernel expansion states must be ordered by k");
        sum += eval_eigenfunction(st, x) * eval_eigenfunction(st, y) * eval_eigenfunction(st, z) /
               st.norm_sq();
    }
    const double K = kernel::kernel_eval(states.front().params(), x, y, z);
    return {sum, K, std::abs(sum - K) / std::max(std::abs(K), RELATIVE_FLOOR)};
}

ExpansionValue kernel_expansion_partial_sum(const PotentialParams& params, int K_terms, double x,
                                            double y, double z, double tol) {
    if (K_terms < 1) throw ConfigurationError("kernel expansion needs at least one term");
    return kernel_expansion_partial_sum(solve_eigenproblem(params, K_terms - 1, solver_tol(tol)),
                                        K_terms, x, y, z);
}

VerificationReport verify_kernel_expansion(const std::vector<EigenState>& states, int K_terms,
                                           const std::vector<std::array<double, 3>>& points,
                                           double tol) {
    check_tol(tol);
    if (states.empty()) throw ConfigurationError("kernel expansion needs at least one state");
    VerificationReport rep;
    rep.identity = Identity::kernel_expansion;
    rep.params = states.front().params();
    rep.inputs = {{"K_terms", K_terms}};
    rep.input_names = {"x", "y", "z"};
    rep.tolerance = tol;
    for (const auto& p : points) {
        const auto v = kernel_expansion_partial_sum(states, K_terms, p[0], p[1], p[2]);
        ResidualRow row = make_row("point", {p[0], p[1], p[2]}, v.kernel, v.value);
        rep.rows.push_back(row);
    }
    finish(rep);
    return rep;
}

std::vector<double> taylor_coefficients(const EigenState& state, int order) {
    if (order < 0) throw ConfigurationError("Taylor order must be nonnegative");
    const double a = state.params().a(), half_lambda = 0.5 * state.params().lambda();
    const double E = state.energy();
    std::vector<double> t(static_cast<std::size_t>(order) + 1, 0.0);
    auto at = [&](int j) { return j < 0 ? 0.0 : t[static_cast<std::size_t>(j)]; };
    t[0] = state.value_at_origin();
    if (order >= 1) t[1] = state.slope_at_origin();
    // (j+2)(j+1) t_{j+2} = a t_{j-2} + (lambda/2) t_{j-4} - E t_j
    for (int j = 0; j + 2 <= order; ++j) {
        t[static_cast<std::size_t>(j + 2)] =
            (a * at(j - 2) + half_lambda * at(j - 4) - E * at(j)) / ((j + 2.0) * (j + 1.0));
    }
    return t;
}

ExpansionTerms asymptotic_partial_sum(const EigenState& state, int N, double y) {
    if (state.params().lambda() != 8.0) {
        throw ConfigurationError(
            "the moment expansion is normalised for lambda = 8; apply scale_state first");
    }
    if (N < 0) throw ConfigurationError("expansion order N must be nonnegative");
    const bool odd = state.parity() == Parity::odd;
    const auto t = taylor_coefficients(state, 2 * N + 3);
    const double Y = y * y + state.params().b();
    double sum = 0.0;
    for (int n = 0; n <= N; ++n) {
        const int j = odd ? 2 * n + 1 : 2 * n;
        sum += t[static_cast<std::size_t>(j)] * airy::phi_n(odd ? n + 1 : n, Y, moment_tol);
    }
    const int jn = odd ? 2 * N + 3 : 2 * N + 2;
    const double next = t[static_cast<std::size_t>(jn)] *
                        airy::phi_n(odd ? N + 2 : N + 1, Y, moment_tol);
    const double pre = odd ? 4.0 * y / state.slope_at_origin() : 2.0 / state.value_at_origin();
    return {pre * sum, pre * next};
}

VerificationReport asymptotic_expansion_check(const EigenState& state, int N,
                                              const std::vector<double>& ys, double tol) {
    check_tol(tol);
    VerificationReport rep;
    rep.identity = Identity::asymptotic_expansion;
    rep.params = state.params();
    rep.inputs = {{"k", state.k()}, {"N", N}};
    rep.input_names = {"y"};
    rep.tolerance = tol;
    for (double y : ys) {
        const auto e = asymptotic_partial_sum(state, N, y);
        ResidualRow row = make_row("partial_sum", {y}, eval_eigenfunction(state, y), e.partial_sum);
        row.reference = std::abs(e.next_term);
        rep.rows.push_back(row);
    }
    finish(rep);
    return rep;
}

VerificationReport asymptotic_expansion_check(const PotentialParams& params, int k, int N,
                                              const std::vector<double>& ys, double tol) {
    if (params.lambda() != 8.0) {
        throw ConfigurationError(
            "the moment expansion is normalised for lambda = 8; apply scale_state first");
    }
    return asymptotic_expansion_check(solve_state(params, k, solver_tol(tol)), N, ys, tol);
}

VerificationReport verify_scaling(const PotentialParams& params, int k, double beta,
                                  const std::vector<double>& xs, double tol) {
    check_tol(tol);
    if (!(beta > 0.0)) throw ConfigurationError("scaling factor beta must be positive");
    const PotentialParams scaled = params.scaled(beta);
    const EigenState base = solve_state(params, k, solver_tol(tol));
    const EigenState other = solve_state(scaled, k, solver_tol(tol));
    VerificationReport rep;
    rep.identity = Identity::scaling;
    rep.params = params;
    rep.inputs = {{"k", k}, {"beta", beta}};
    rep.input_names = {"x"};
    rep.tolerance = tol;
    rep.rows.push_back(make_row("energy", {std::nan("")},
                                std::pow(beta, -1.0 / 3.0) * base.energy(), other.energy()));
    const double f = std::pow(beta, 1.0 / 6.0);
    for (double x : xs) {
        rep.rows.push_back(make_row("psi", {x}, eval_eigenfunction(base, x),
                                    f * eval_eigenfunction(other, f * x)));
    }
    finish(rep);
    return rep;
}

VerificationReport verify_pde_identity(const PotentialParams& params,
                                       const std::vector<std::array<double, 3>>& points, double h,
                                       double tol) {
    check_tol(tol);
    VerificationReport rep;
    rep.identity = Identity::pde_identity;
    rep.params = params;
    rep.inputs = {{"h", h}};
    rep.input_names = {"x", "y", "z"};
    rep.tolerance = tol;
    for (const auto& p : points) {
        const auto r = kernel::check_pde_identity(params, p[0], p[1], p[2], h);
        for (const auto& [label, value] : {std::pair{"xy", r.r_xy}, std::pair{"xz", r.r_xz}}) {
            ResidualRow row;
            row.label = label;
            row.input = {p[0], p[1], p[2]};
            row.lhs = value;
            row.rhs = 0.0;
            row.abs_residual = std::abs(value);
            row.rel_residual = r.scale > 0.0 ? std::abs(value) / r.scale : std::abs(value);
            row.reference = r.scale;
            rep.rows.push_back(row);
        }
    }
    finish(rep);
    return rep;
}

}  // namespace quartic::verify
