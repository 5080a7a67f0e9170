#pragma once

#include "quartic/verify.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace quartic::io {

/// Shortest decimal that round-trips the double; "nan", "inf", "-inf" for
/// non-finite values.
std::string format_number(double v);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF, with
/// embedded quotes doubled.
std::string csv_field(std::string_view s);

/// One CSV record terminated by CRLF.
std::string csv_line(const std::vector<std::string>& fields);

nlohmann::json to_json(const verify::VerificationReport& report);

/// Pretty-printed JSON document (schema/verification_report.schema.json).
std::string report_to_json(const verify::VerificationReport& report);

/// Header plus one record per residual row.
std::string report_to_csv(const verify::VerificationReport& report);

}  // namespace quartic::io
