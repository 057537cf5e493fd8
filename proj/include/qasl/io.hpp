#pragma once

// JSON file formats for matrices and Laurent polynomials, plus file helpers
// that attach the path to every failure.

#include <string>

#include <json.hpp>

#include "qasl/laurent.hpp"
#include "qasl/linalg.hpp"

namespace qasl::io {

using Json = nlohmann::json;

/// {"dim": k, "entries": [[[re, im], ...], ...]} row-major.
[[nodiscard]] Json matrix_to_json(const ComplexMatrix& M);
/// Throws InputError on non-square, ragged, non-numeric or non-finite payloads.
[[nodiscard]] ComplexMatrix matrix_from_json(const Json& j);

/// {"n": k, "terms": [{"exp": [...], "re": x, "im": y}, ...]} in exponent order.
[[nodiscard]] Json poly_to_json(const LaurentPoly& g);
/// Throws InputError on malformed payloads and on repeated exponents.
[[nodiscard]] LaurentPoly poly_from_json(const Json& j);

/// Parses a JSON file; InputError carries the path.
[[nodiscard]] Json read_json_file(const std::string& path);
/// Writes text to a file; InputError carries the path.
void write_text_file(const std::string& path, const std::string& text);

/// Shortest round-trip decimal form of x (std::to_chars).
[[nodiscard]] std::string format_double(double x);

}  // namespace qasl::io
