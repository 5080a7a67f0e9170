#include "quartic/cli.hpp"

#include "quartic/errors.hpp"
#include "quartic/verify.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <set>

namespace quartic::cli {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::kernel: return "kernel";
        case Command::verify: return "verify";
        case Command::expand: return "expand";
        case Command::airy: return "airy";
    }
    return "unknown";
}

std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Command command_from_string(std::string_view s) {
    for (Command c : {Command::solve, Command::kernel, Command::verify, Command::expand,
                      Command::airy}) {
        if (to_string(c) == s) return c;
    }
    throw ConfigurationError("unknown command '" + std::string(s) + "'");
}

Format format_from_string(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ConfigurationError("unknown output format '" + std::string(s) + "'");
}

std::string canonical_identity(std::string_view s) {
    if (s == "product") return "product_formula";
    if (s == "integral") return "integral_equation";
    if (s == "expansion") return "kernel_expansion";
    if (s == "asymptotic") return "asymptotic_expansion";
    if (s == "pde") return "pde_identity";
    return std::string(verify::to_string(verify::identity_from_string(s)));
}

nlohmann::json to_json(const RunConfig& c) {
    return {{"command", std::string(to_string(c.command))},
            {"a", c.a},
            {"lambda", c.lambda},
            {"k", c.k},
            {"k_max", c.k_max},
            {"tol", c.tol},
            {"identity", c.identity},
            {"grid", c.grid},
            {"range", c.range},
            {"ys", c.ys},
            {"xs", c.xs},
            {"m", c.m},
            {"parity", c.parity},
            {"order", c.order},
            {"beta", c.beta},
            {"h", c.h},
            {"points", c.points},
            {"k_terms", c.k_terms},
            {"n_max", c.n_max},
            {"samples", c.samples},
            {"format", std::string(to_string(c.format))},
            {"output", c.output},
            {"seed", c.seed}};
}

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigurationError("run configuration must be a JSON object");
    const std::set<std::string> known{"command", "a",      "lambda", "k",       "k_max",  "tol",
                                      "identity", "grid",  "range",  "ys",      "xs",     "m",
                                      "parity",  "order",  "beta",   "h",       "points", "k_terms",
                                      "n_max",   "samples", "format", "output", "seed"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) throw ConfigurationError("unknown configuration key '" + key + "'");
    }
    RunConfig c;
    try {
        if (j.contains("command")) c.command = command_from_string(j.at("command").get<std::string>());
        if (j.contains("format")) c.format = format_from_string(j.at("format").get<std::string>());
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("a", c.a);
        get("lambda", c.lambda);
        get("k", c.k);
        get("k_max", c.k_max);
        get("tol", c.tol);
        get("identity", c.identity);
        get("grid", c.grid);
        get("range", c.range);
        get("ys", c.ys);
        get("xs", c.xs);
        get("m", c.m);
        get("parity", c.parity);
        get("order", c.order);
        get("beta", c.beta);
        get("h", c.h);
        get("points", c.points);
        get("k_terms", c.k_terms);
        get("n_max", c.n_max);
        get("samples", c.samples);
        get("output", c.output);
        get("seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError(std::string("malformed run configuration: ") + e.what());
    }
    return c;
}

std::vector<int> parse_grid(std::string_view spec, std::size_t dims) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t next = std::min(spec.find('x', pos), spec.size());
        int v = 0;
        const auto part = spec.substr(pos, next - pos);
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || res.ec != std::errc{} || res.ptr != part.data() + part.size() || v <= 0) {
            throw ConfigurationError("grid '" + std::string(spec) + "' must look like " +
                                     (dims == 2 ? "5x5" : "11x11x11"));
        }
        out.push_back(v);
        pos = next + 1;
    }
    if (out.size() != dims) {
        throw ConfigurationError("grid '" + std::string(spec) + "' needs " + std::to_string(dims) +
                                 " dimensions");
    }
    return out;
}

std::string resolve_output_path(const std::string& output) {
    if (output.empty()) return output;
    const std::filesystem::path p(output);
    const char* dir = std::getenv(OUTPUT_DIR_ENV);
    if (p.is_absolute() || dir == nullptr || *dir == '\0') return output;
    return (std::filesystem::path(dir) / p).string();
}

}  // namespace quartic::cli
