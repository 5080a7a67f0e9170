#include "quartic/cli.hpp"
#include "quartic/errors.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace quartic;
using namespace quartic::cli;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_config(const RunConfig& c) {
    std::ostringstream out, err;
    const int status = run(c, out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("defaults") {
    const RunConfig c;
    CHECK(c.a == 0.0);
    CHECK(c.lambda == 8.0);
    CHECK(c.tol == 1e-8);
    CHECK(c.format == Format::csv);
}

TEST_CASE("configuration round-trips through JSON") {
    RunConfig c;
    c.command = Command::verify;
    c.a = -1.5;
    c.lambda = 3.0;
    c.identity = "integral_equation";
    c.ys = {0.0, 0.25};
    c.parity = "odd";
    c.format = Format::json;
    c.output = "out/report.json";
    c.seed = 12345678901234ULL;
    CHECK(config_from_json(to_json(c)) == c);
    CHECK(config_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
    CHECK(config_from_json(nlohmann::json::object()) == RunConfig{});
}

TEST_CASE("malformed configurations") {
    CHECK_THROWS_AS(config_from_json({{"lamda", 8}}), ConfigurationError);
    CHECK_THROWS_AS(config_from_json({{"a", "zero"}}), ConfigurationError);
    CHECK_THROWS_AS(config_from_json({{"command", "plot"}}), ConfigurationError);
    CHECK_THROWS_AS(config_from_json({{"format", "xml"}}), ConfigurationError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigurationError);
}

TEST_CASE("grid specifications") {
    CHECK(parse_grid("5x5", 2) == std::vector<int>{5, 5});
    CHECK(parse_grid("11x3x7", 3) == std::vector<int>{11, 3, 7});
    for (const char* bad : {"", "5", "5x", "x5", "5x0", "5x-1", "5y5", "5x5x5"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_grid(bad, 2), ConfigurationError);
    }
}

TEST_CASE("identity aliases") {
    CHECK(canonical_identity("product") == "product_formula");
    CHECK(canonical_identity("pde") == "pde_identity");
    CHECK(canonical_identity("scaling") == "scaling");
    CHECK(canonical_identity("kernel_expansion") == "kernel_expansion");
    CHECK_THROWS_AS(canonical_identity("nonsense"), ConfigurationError);
}

TEST_CASE("output directory from the environment") {
    ::setenv(OUTPUT_DIR_ENV, "/tmp/quartic-out", 1);
    CHECK(resolve_output_path("r.csv") == "/tmp/quartic-out/r.csv");
    CHECK(resolve_output_path("/abs/r.csv") == "/abs/r.csv");
    CHECK(resolve_output_path("") == "");
    ::unsetenv(OUTPUT_DIR_ENV);
    CHECK(resolve_output_path("r.csv") == "r.csv");
}

TEST_CASE("solve writes one row per state") {
    RunConfig c;
    c.k_max = 3;
    const auto r = run_config(c);
    CHECK(r.status == EXIT_OK);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "k,energy,parity,norm_sq,nodes,x_max\r");
    CHECK(l[1].rfind("0,1.68321989", 0) == 0);
    CHECK(l[2].find(",odd,") != std::string::npos);
}

TEST_CASE("solve with samples as JSON") {
    RunConfig c;
    c.k_max = 1;
    c.samples = 5;
    c.format = Format::json;
    const auto r = run_config(c);
    REQUIRE(r.status == EXIT_OK);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("command") == "solve");
    CHECK(j.at("rows").size() == 10);
    CHECK(j.at("rows")[2].at("x") == 0.0);
    CHECK(j.at("rows")[7].at("psi") == 0.0);
}

TEST_CASE("failed verification still writes the report") {
    RunConfig c;
    c.command = Command::verify;
    c.identity = "asymptotic_expansion";
    c.ys = {3.0};
    c.tol = 1e-6;
    const auto r = run_config(c);
    CHECK(r.status == EXIT_FAILED);
    CHECK(lines(r.out).size() == 2);
    CHECK(r.err.find("failed") != std::string::npos);
}

TEST_CASE("passing verification") {
    RunConfig c;
    c.command = Command::verify;
    c.identity = "integral_equation";
    c.ys = {0.5};
    c.tol = 1e-6;
    CHECK(run_config(c).status == EXIT_OK);
}

TEST_CASE("usage errors") {
    RunConfig c;
    c.lambda = -1.0;
    CHECK(run_config(c).status == EXIT_USAGE);
    c = RunConfig{};
    c.command = Command::kernel;
    c.grid = "3x3";
    CHECK(run_config(c).status == EXIT_USAGE);
    c = RunConfig{};
    c.command = Command::expand;
    c.lambda = 2.0;
    CHECK(run_config(c).status == EXIT_USAGE);
    c = RunConfig{};
    c.tol = 0.0;
    CHECK(run_config(c).status == EXIT_USAGE);
}

TEST_CASE("output file under the configured directory") {
    const auto dir = std::filesystem::temp_directory_path() / "quartic-cli-test";
    std::filesystem::remove_all(dir);
    ::setenv(OUTPUT_DIR_ENV, dir.c_str(), 1);
    RunConfig c;
    c.command = Command::airy;
    c.output = "sub/airy.csv";
    const auto r = run_config(c);
    ::unsetenv(OUTPUT_DIR_ENV);
    CHECK(r.status == EXIT_OK);
    CHECK(r.out.empty());
    std::ifstream in(dir / "sub" / "airy.csv");
    REQUIRE(in);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,ai,ai_prime,phi_0,phi_1,phi_2,phi_3\r");
    std::filesystem::remove_all(dir);
}
