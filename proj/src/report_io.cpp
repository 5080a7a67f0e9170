#include "quartic/report_io.hpp"

#include <charconv>
#include <cmath>

namespace quartic::io {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

namespace {

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const verify::VerificationReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json input = nlohmann::json::object();
        for (std::size_t i = 0; i < row.input.size() && i < r.input_names.size(); ++i) {
            input[r.input_names[i]] = number_or_null(row.input[i]);
        }
        rows.push_back({{"label", row.label},
                        {"input", input},
                        {"lhs", number_or_null(row.lhs)},
                        {"rhs", number_or_null(row.rhs)},
                        {"abs_residual", number_or_null(row.abs_residual)},
                        {"rel_residual", number_or_null(row.rel_residual)},
                        {"quad_error", number_or_null(row.quad_error)},
                        {"reference", number_or_null(row.reference)}});
    }
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = number_or_null(v);
    return {{"identity", std::string(verify::to_string(r.identity))},
            {"params", {{"a", r.params.a()}, {"lambda", r.params.lambda()}}},
            {"inputs", inputs},
            {"tolerance", r.tolerance},
            {"passed", r.passed},
            {"fitted_constant",
             r.fitted_constant ? number_or_null(*r.fitted_constant) : nlohmann::json(nullptr)},
            {"quadrature",
             {{"max_error_estimate", r.quadrature.max_error_estimate},
              {"max_truncation_bound", r.quadrature.max_truncation_bound},
              {"evaluations", r.quadrature.evaluations},
              {"rho", r.quadrature.rho}}},
            {"rows", rows}};
}

std::string report_to_json(const verify::VerificationReport& report) {
    return to_json(report).dump(2) + "\n";
}

std::string report_to_csv(const verify::VerificationReport& r) {
    std::vector<std::string> header{"identity", "a", "lambda", "label"};
    header.insert(header.end(), r.input_names.begin(), r.input_names.end());
    for (const char* c : {"lhs", "rhs", "abs_residual", "rel_residual", "quad_error", "reference",
                          "tolerance", "passed"}) {
        header.emplace_back(c);
    }
    std::string out = csv_line(header);
    const std::string id(verify::to_string(r.identity));
    for (const auto& row : r.rows) {
        std::vector<std::string> f{id, format_number(r.params.a()), format_number(r.params.lambda()),
                                   row.label};
        for (std::size_t i = 0; i < r.input_names.size(); ++i) {
            f.push_back(i < row.input.size() ? format_number(row.input[i]) : "");
        }
        for (double v : {row.lhs, row.rhs, row.abs_residual, row.rel_residual, row.quad_error,
                         row.reference, r.tolerance}) {
            f.push_back(format_number(v));
        }
        f.emplace_back(row.rel_residual <= r.tolerance ? "true" : "false");
        out += csv_line(f);
    }
    return out;
}

}  // namespace quartic::io
