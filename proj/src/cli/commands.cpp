#include "quartic/airy.hpp"
#include "quartic/cli.hpp"
#include "quartic/errors.hpp"
#include "quartic/kernel.hpp"
#include "quartic/oscillator.hpp"
#include "quartic/report_io.hpp"
#include "quartic/verify.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace quartic::cli {

namespace {

using nlohmann::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return io::format_number(v.get<double>());
    return "";
}

std::string render(const Table& t, Format f, const RunConfig& c) {
    if (f == Format::csv) {
        std::string out = io::csv_line(t.columns);
        for (const auto& row : t.rows) {
            std::vector<std::string> fields;
            fields.reserve(row.size());
            for (const auto& v : row) fields.push_back(cell_text(v));
            out += io::csv_line(fields);
        }
        return out;
    }
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const json& v = row[i];
            obj[t.columns[i]] = v.is_number_float() && !std::isfinite(v.get<double>()) ? json(nullptr) : v;
        }
        rows.push_back(obj);
    }
    return json{{"command", std::string(to_string(c.command))}, {"config", to_json(c)}, {"rows", rows}}
               .dump(2) +
           "\n";
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n == 1) return {0.5 * (lo + hi)};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<std::array<double, 3>> random_points(const RunConfig& c) {
    if (c.points <= 0) throw ConfigurationError("--points must be positive");
    std::mt19937_64 gen(c.seed);
    std::uniform_real_distribution<double> U(-c.range, c.range);
    std::vector<std::array<double, 3>> pts(static_cast<std::size_t>(c.points));
    for (auto& p : pts) {
        p[0] = U(gen);
        p[1] = U(gen);
        p[2] = U(gen);
    }
    return pts;
}

PotentialParams params_of(const RunConfig& c) { return {c.a, c.lambda}; }

Table solve_table(const RunConfig& c) {
    const auto states = solve_eigenproblem(params_of(c), c.k_max, std::clamp(c.tol, 1e-12, 1e-6));
    Table t;
    if (c.samples <= 0) {
        t.columns = {"k", "energy", "parity", "norm_sq", "nodes", "x_max"};
        for (const auto& s : states) {
            t.rows.push_back({s.k(), s.energy(), s.parity() == Parity::even ? "even" : "odd",
                              s.norm_sq(), node_count(s), s.x_max()});
        }
        return t;
    }
    t.columns = {"k", "energy", "parity", "norm_sq", "x", "psi"};
    const auto xs = linspace(-c.range, c.range, c.samples);
    for (const auto& s : states) {
        for (double x : xs) {
            t.rows.push_back({s.k(), s.energy(), s.parity() == Parity::even ? "even" : "odd",
                              s.norm_sq(), x, eval_eigenfunction(s, x)});
        }
    }
    return t;
}

Table kernel_table(const RunConfig& c) {
    const auto g = parse_grid(c.grid.empty() ? "11x11x11" : c.grid, 3);
    const auto p = params_of(c);
    Table t;
    t.columns = {"x", "y", "z", "value"};
    for (double x : linspace(-c.range, c.range, g[0])) {
        for (double y : linspace(-c.range, c.range, g[1])) {
            for (double z : linspace(-c.range, c.range, g[2])) {
                t.rows.push_back({x, y, z, kernel::kernel_eval(p, x, y, z)});
            }
        }
    }
    return t;
}

Table expand_table(const RunConfig& c) {
    if (c.order < 0) throw ConfigurationError("--order must be nonnegative");
    const auto p = params_of(c);
    if (p.lambda() != 8.0) {
        throw ConfigurationError("expand requires lambda = 8; scale the parameters first");
    }
    const auto state = solve_state(p, c.k, verify::solver_tol(c.tol));
    const std::vector<double> ys = c.ys.empty() ? std::vector<double>{2.0, 3.0, 4.0} : c.ys;
    Table t;
    t.columns = {"y", "N", "psi", "partial_sum", "abs_error", "next_term", "ratio"};
    for (double y : ys) {
        const double psi = eval_eigenfunction(state, y);
        for (int n = 0; n <= c.order; ++n) {
            const auto e = verify::asymptotic_partial_sum(state, n, y);
            t.rows.push_back({y, n, psi, e.partial_sum, std::abs(psi - e.partial_sum),
                              std::abs(e.next_term), psi / e.partial_sum});
        }
    }
    return t;
}

Table airy_table(const RunConfig& c) {
    if (c.n_max < 0) throw ConfigurationError("--nmax must be nonnegative");
    const std::vector<double> xs =
        c.xs.empty() ? std::vector<double>{-2.0, 0.0, 1.0, 5.0} : c.xs;
    const double tol = std::clamp(c.tol, 1e-14, 1e-4);
    Table t;
    t.columns = {"x", "ai", "ai_prime"};
    for (int n = 0; n <= c.n_max; ++n) t.columns.push_back("phi_" + std::to_string(n));
    for (double x : xs) {
        const auto v = airy::ai(x, tol);
        std::vector<json> row{x, v.ai, v.ai_prime};
        for (int n = 0; n <= c.n_max; ++n) row.emplace_back(airy::phi_n(n, x, tol));
        t.rows.push_back(std::move(row));
    }
    return t;
}

verify::VerificationReport verify_report(const RunConfig& c) {
    const auto p = params_of(c);
    const auto id = verify::identity_from_string(canonical_identity(c.identity));
    switch (id) {
        case verify::Identity::product_formula: {
            const auto g = parse_grid(c.grid.empty() ? "5x5" : c.grid, 2);
            std::vector<std::pair<double, double>> pts;
            for (double x : linspace(-c.range, c.range, g[0])) {
                for (double y : linspace(-c.range, c.range, g[1])) pts.emplace_back(x, y);
            }
            return verify::verify_product_formula(p, c.k, pts, c.tol);
        }
        case verify::Identity::integral_equation: {
            if (c.parity != "even" && c.parity != "odd") {
                throw ConfigurationError("--parity must be even or odd");
            }
            const std::vector<double> ys =
                c.ys.empty() ? std::vector<double>{0.0, 0.5, 1.0, 2.0} : c.ys;
            return verify::verify_integral_equation(
                p, c.m, c.parity == "even" ? Parity::even : Parity::odd, ys, c.tol);
        }
        case verify::Identity::kernel_expansion: {
            if (c.k_terms < 1 || c.k_terms > 41) {
                throw ConfigurationError("--kterms must lie in [1, 41]");
            }
            const auto states = solve_eigenproblem(p, c.k_terms - 1, verify::solver_tol(c.tol));
            return verify::verify_kernel_expansion(states, c.k_terms, random_points(c), c.tol);
        }
        case verify::Identity::asymptotic_expansion: {
            const std::vector<double> ys =
                c.ys.empty() ? std::vector<double>{3.0, 4.0} : c.ys;
            return verify::asymptotic_expansion_check(p, c.k, c.order, ys, c.tol);
        }
        case verify::Identity::pde_identity:
            return verify::verify_pde_identity(p, random_points(c), c.h, c.tol);
        case verify::Identity::scaling: {
            const std::vector<double> xs =
                c.xs.empty() ? std::vector<double>{0.5, 1.0, 1.3} : c.xs;
            return verify::verify_scaling(p, c.k, c.beta, xs, c.tol);
        }
    }
    throw ConfigurationError("unhandled identity");
}

void emit(const std::string& text, const RunConfig& c, std::ostream& out) {
    const std::string path = resolve_output_path(c.output);
    if (path.empty()) {
        out << text;
        return;
    }
    const std::filesystem::path fp(path);
    if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
    std::ofstream f(fp, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + path + "'");
    f << text;
    if (!f) throw Error("failed writing output file '" + path + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!(config.tol > 0.0)) throw ConfigurationError("--tol must be positive");
        if (config.command == Command::verify) {
            const auto report = verify_report(config);
            emit(config.format == Format::json ? io::report_to_json(report)
                                               : io::report_to_csv(report),
                 config, out);
            if (!report.passed) {
                err << "verification " << verify::to_string(report.identity) << " failed\n";
                return EXIT_FAILED;
            }
            return EXIT_OK;
        }
        Table t;
        switch (config.command) {
            case Command::solve: t = solve_table(config); break;
            case Command::kernel: t = kernel_table(config); break;
            case Command::expand: t = expand_table(config); break;
            case Command::airy: t = airy_table(config); break;
            case Command::verify: break;
        }
        emit(render(t, config.format, config), config, out);
        return EXIT_OK;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const BracketingError& e) {
        err << "error: " << e.what() << " (k = " << e.k() << ", scan [" << e.scan_lo() << ", "
            << e.scan_hi() << "])\n";
        return EXIT_FAILED;
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << " (suggested step " << e.suggested_step() << ")\n";
        return EXIT_FAILED;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << " (best estimate " << e.best_value() << " +- "
            << e.best_error() << ")\n";
        return EXIT_FAILED;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_FAILED;
    }
}

}  // namespace quartic::cli
