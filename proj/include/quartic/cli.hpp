#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace quartic::cli {

enum class Command { solve, kernel, verify, expand, airy };
enum class Format { csv, json };

inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_FAILED = 1;
inline constexpr int EXIT_USAGE = 2;

/// Environment variable naming the directory for relative output paths.
inline constexpr const char* OUTPUT_DIR_ENV = "QUARTIC_OUTPUT_DIR";

struct RunConfig {
    Command command = Command::solve;
    double a = 0.0;
    double lambda = 8.0;
    int k = 0;
    int k_max = 5;
    double tol = 1e-8;
    std::string identity = "product_formula";
    std::string grid;       // "NxM" or "NxMxL"; empty selects the command default
    double range = 1.5;     // grids and random points cover [-range, range]
    std::vector<double> ys;
    std::vector<double> xs;
    int m = 0;
    std::string parity = "even";
    int order = 0;          // expansion order N
    double beta = 8.0;
    double h = 1e-2;
    int points = 50;        // random points for the pde and kernel expansion checks
    int k_terms = 16;
    int n_max = 3;
    int samples = 0;        // eigenfunction samples per state for solve
    Format format = Format::csv;
    std::string output;     // empty writes to stdout
    std::uint64_t seed = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string_view to_string(Command c);
std::string_view to_string(Format f);
Command command_from_string(std::string_view s);
Format format_from_string(std::string_view s);

/// Short names (product, integral, expansion, asymptotic, pde) or the full
/// identity names.
std::string canonical_identity(std::string_view s);

nlohmann::json to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

/// "5x5" -> {5, 5}. Every count must be positive.
std::vector<int> parse_grid(std::string_view spec, std::size_t dims);

/// Output path with OUTPUT_DIR_ENV prepended to relative paths.
std::string resolve_output_path(const std::string& output);

/// Execute the configured command, writing the artifact to config.output
/// (or `out` when empty) and diagnostics to `err`. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace quartic::cli
