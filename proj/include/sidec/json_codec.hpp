#pragma once

#include <string>

#include <json.hpp>

#include "sidec/exact_matrix.hpp"

namespace sidec {

using Json = nlohmann::ordered_json;

/// {"re": "p/q", "im": "p/q"}.
Json to_json(const GaussianRational& z);
/// {"rows": r, "cols": c, "entries": [[i, j, scalar], ...]} listing nonzero
/// entries in row-major order with 1-based indices.
Json to_json(const ExactMatrix& m);

/// Decoders throw ParseError naming the JSON path (e.g. "/cells/0/weight").
Rational rational_from_json(const Json& j, const std::string& path);
GaussianRational scalar_from_json(const Json& j, const std::string& path);
ExactMatrix matrix_from_json(const Json& j, const std::string& path);

/// Deterministic layout used for every file the tools write: two-space
/// indentation, with any value whose compact form fits in 72 characters
/// kept on one line (so small arrays read as [2,3,2]).
std::string format_json(const Json& j);

/// Fetches a required member, or throws ParseError naming the path.
const Json& require_member(const Json& object, const std::string& key, const std::string& path);

}  // namespace sidec
