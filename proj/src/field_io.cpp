#include "sidec/field_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sidec/errors.hpp"

namespace sidec {

Json field_to_json(const OperatorField& field) {
  std::vector<const SpectralCell*> cells;
  for (const auto& c : field.cells) cells.push_back(&c);
  std::sort(cells.begin(), cells.end(), [](const SpectralCell* a, const SpectralCell* b) { return a->id < b->id; });

  Json out = Json::object();
  out["name"] = field.name;
  Json arr = Json::array();
  for (const SpectralCell* c : cells) {
    Json cell = Json::object();
    cell["id"] = c->id;
    cell["value"] = to_json(c->spectral_value);
    cell["weight"] = to_string(c->weight);
    Json mass = Json::object();
    if (const auto* atomic = std::get_if<AtomicMass>(&c->mass)) {
      mass["type"] = "atomic";
      mass["count"] = atomic->count;
    } else {
      mass["type"] = "continuous";
    }
    cell["mass"] = std::move(mass);
    cell["n"] = c->block_size;
    Json entries = Json::object();
    for (const auto& [idx, v] : c->upper_entries) {
      entries[std::to_string(idx.first) + "," + std::to_string(idx.second)] = to_json(v);
    }
    cell["entries"] = std::move(entries);
    arr.push_back(std::move(cell));
  }
  out["cells"] = std::move(arr);
  return out;
}

std::string serialize_field(const OperatorField& field) { return format_json(field_to_json(field)); }

namespace {

EntryIndex parse_entry_key(const std::string& key, const std::string& path) {
  auto comma = key.find(',');
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (comma == std::string::npos || !digits(key.substr(0, comma)) || !digits(key.substr(comma + 1))) {
    throw ParseError(path + ": entry key \"" + key + "\" is not of the form \"i,j\"");
  }
  try {
    return {std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError(path + ": entry key \"" + key + "\" is out of range");
  }
}

std::size_t count_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  // Negative counts are carried through and rejected by validation.
  const auto v = j.get<long long>();
  if (v < 0) throw ParseError(path + ": expected a nonnegative integer, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

}  // namespace

OperatorField field_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError((path.empty() ? "/" : path) + ": expected an object");
  OperatorField field;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw ParseError(path + "/name: expected a string");
    field.name = it->get<std::string>();
  }
  const Json& cells = require_member(j, "cells", path.empty() ? "/" : path);
  if (!cells.is_array()) throw ParseError(path + "/cells: expected an array");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string p = path + "/cells/" + std::to_string(k);
    const Json& cj = cells[k];
    SpectralCell cell;
    const Json& id = require_member(cj, "id", p);
    if (!id.is_string()) throw ParseError(p + "/id: expected a string");
    cell.id = id.get<std::string>();
    cell.spectral_value = scalar_from_json(require_member(cj, "value", p), p + "/value");
    cell.weight = rational_from_json(require_member(cj, "weight", p), p + "/weight");
    const Json& mass = require_member(cj, "mass", p);
    const Json& type = require_member(mass, "type", p + "/mass");
    if (type == "atomic") {
      cell.mass = AtomicMass{count_from_json(require_member(mass, "count", p + "/mass"), p + "/mass/count")};
    } else if (type == "continuous") {
      cell.mass = ContinuousMass{};
    } else {
      throw ParseError(p + "/mass/type: expected \"atomic\" or \"continuous\"");
    }
    cell.block_size = count_from_json(require_member(cj, "n", p), p + "/n");
    if (auto it = cj.find("entries"); it != cj.end()) {
      if (!it->is_object()) throw ParseError(p + "/entries: expected an object");
      for (const auto& [key, value] : it->items()) {
        const std::string ep = p + "/entries/" + key;
        cell.upper_entries[parse_entry_key(key, ep)] = scalar_from_json(value, ep);
      }
    }
    field.cells.push_back(std::move(cell));
  }
  return field;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

OperatorField parse_field(const std::string& text) { return field_from_json(parse_json_text(text, "<input>")); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OperatorField parse_field_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return field_from_json(parse_json_text(text, path.string()));
  } catch (const ParseError& e) {
    std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + msg);
  }
}

}  // namespace sidec
