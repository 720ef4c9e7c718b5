#pragma once

#include <filesystem>
#include <string>

#include "sidec/json_codec.hpp"
#include "sidec/operator_field.hpp"

namespace sidec {

/// Canonical JSON: cells sorted by id, entries by (i, j), fixed key order.
Json field_to_json(const OperatorField& field);
std::string serialize_field(const OperatorField& field);

/// Structural decoding only; use validate_field for the invariants.
/// Throws ParseError naming the JSON path of the offending value.
OperatorField field_from_json(const Json& j, const std::string& path = "");

/// Parses text; syntax errors carry line and column.
OperatorField parse_field(const std::string& text);
OperatorField parse_field_file(const std::filesystem::path& path);

/// Parses JSON text, turning syntax errors into ParseError with line/column.
Json parse_json_text(const std::string& text, const std::string& origin);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sidec
