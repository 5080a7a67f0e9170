#include "quartic/cli.hpp"
#include "quartic/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using quartic::cli::RunConfig;

namespace {

// The configuration file is read before flag parsing so that flags given on
// the command line override it.
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

void add_common(CLI::App& app, RunConfig& c, std::string& format) {
    app.add_option("--a", c.a, "Quadratic coefficient a");
    app.add_option("--lambda", c.lambda, "Quartic coefficient lambda > 0");
    app.add_option("--tol", c.tol, "Tolerance");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", c.output, "Output file (default stdout)");
    app.add_option("--seed", c.seed, "Seed for random point clouds");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quartic oscillator eigenproblem and Airy kernel toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig c;
    std::string config_path;
    bool print_config = false;
    try {
        config_path = find_config_path(argc, argv);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw quartic::ConfigurationError("cannot read configuration '" + config_path + "'");
            c = quartic::cli::config_from_json(nlohmann::json::parse(in));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return quartic::cli::EXIT_USAGE;
    }
    std::string format(quartic::cli::to_string(c.format));
    app.add_option("--config", config_path, "Load a JSON run configuration");
    app.add_flag("--print-config", print_config, "Print the resolved configuration and exit");

    auto* solve = app.add_subcommand("solve", "Eigenvalues and eigenfunctions");
    add_common(*solve, c, format);
    solve->add_option("--kmax", c.k_max, "Highest state index");
    solve->add_option("--samples", c.samples, "Eigenfunction samples per state on [-range, range]");
    solve->add_option("--range", c.range, "Sampling half-width");

    auto* kern = app.add_subcommand("kernel", "Kernel values on a grid");
    add_common(*kern, c, format);
    kern->add_option("--grid", c.grid, "Grid like 11x11x11");
    kern->add_option("--range", c.range, "Grid half-width");

    auto* ver = app.add_subcommand("verify", "Verify an identity and write a report");
    add_common(*ver, c, format);
    ver->add_option("identity", c.identity,
                    "product | integral | expansion | asymptotic | pde | scaling")
        ->required();
    ver->add_option("--k", c.k, "State index");
    ver->add_option("--m", c.m, "Integral equation index (k = 2m or 2m+1)");
    ver->add_option("--parity", c.parity, "even | odd")->check(CLI::IsMember({"even", "odd"}));
    ver->add_option("--grid", c.grid, "Grid like 5x5");
    ver->add_option("--range", c.range, "Grid or point-cloud half-width");
    ver->add_option("--ys", c.ys, "Evaluation points y")->delimiter(',');
    ver->add_option("--xs", c.xs, "Evaluation points x")->delimiter(',');
    ver->add_option("--order", c.order, "Expansion order N");
    ver->add_option("--beta", c.beta, "Scaling factor");
    ver->add_option("--step", c.h, "Finite-difference step h");
    ver->add_option("--points", c.points, "Random points");
    ver->add_option("--kterms", c.k_terms, "Eigenfunctions in the kernel expansion");

    auto* exp = app.add_subcommand("expand", "Moment-expansion partial sums against psi_k");
    add_common(*exp, c, format);
    exp->add_option("--k", c.k, "State index");
    exp->add_option("--order", c.order, "Highest expansion order N");
    exp->add_option("--ys", c.ys, "Evaluation points y")->delimiter(',');

    auto* air = app.add_subcommand("airy", "Ai, Ai' and moment integrals");
    add_common(*air, c, format);
    air->add_option("--xs", c.xs, "Arguments")->delimiter(',');
    air->add_option("--nmax", c.n_max, "Highest moment order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : quartic::cli::EXIT_USAGE;
    }

    try {
        c.format = quartic::cli::format_from_string(format);
        for (auto* sub : app.get_subcommands()) {
            c.command = quartic::cli::command_from_string(sub->get_name());
        }
        if (c.command == quartic::cli::Command::verify) {
            c.identity = quartic::cli::canonical_identity(c.identity);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return quartic::cli::EXIT_USAGE;
    }

    if (print_config) {
        std::cout << quartic::cli::to_json(c).dump(2) << "\n";
        return quartic::cli::EXIT_OK;
    }
    return quartic::cli::run(c, std::cout, std::cerr);
}
