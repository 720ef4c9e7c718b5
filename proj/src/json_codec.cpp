#include "sidec/json_codec.hpp"

#include "sidec/errors.hpp"

namespace sidec {

Json to_json(const GaussianRational& z) {
  Json j = Json::object();
  j["re"] = to_string(z.real());
  j["im"] = to_string(z.imag());
  return j;
}

Json to_json(const ExactMatrix& m) {
  Json j = Json::object();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) entries.push_back(Json::array({r + 1, c + 1, to_json(m(r, c))}));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

namespace {

void format_into(const Json& j, std::size_t indent, std::string& out) {
  std::string compact = j.dump();
  if (compact.size() <= 72 || !j.is_structured()) {
    out += compact;
    return;
  }
  const std::string pad(indent + 2, ' ');
  const bool object = j.is_object();
  out += object ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (object) out += Json(it.key()).dump() + ": ";
    format_into(*it, indent + 2, out);
  }
  out += "\n" + std::string(indent, ' ') + (object ? "}" : "]");
}

}  // namespace

std::string format_json(const Json& j) {
  std::string out;
  format_into(j, 0, out);
  return out + "\n";
}

const Json& require_member(const Json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) throw ParseError(path + ": expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(path + ": missing field \"" + key + "\"");
  return *it;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GaussianRational scalar_from_json(const Json& j, const std::string& path) {
  return {rational_from_json(require_member(j, "re", path), path + "/re"),
          rational_from_json(require_member(j, "im", path), path + "/im")};
}

ExactMatrix matrix_from_json(const Json& j, const std::string& path) {
  const Json& rows = require_member(j, "rows", path);
  const Json& cols = require_member(j, "cols", path);
  const Json& entries = require_member(j, "entries", path);
  if (!rows.is_number_unsigned() || !cols.is_number_unsigned()) throw ParseError(path + ": rows/cols must be counts");
  if (!entries.is_array()) throw ParseError(path + "/entries: expected an array");
  ExactMatrix m(rows.get<std::size_t>(), cols.get<std::size_t>());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string p = path + "/entries/" + std::to_string(k);
    const Json& e = entries[k];
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw ParseError(p + ": expected [row, col, scalar]");
    }
    const auto r = e[0].get<std::size_t>();
    const auto c = e[1].get<std::size_t>();
    if (r < 1 || c < 1 || r > m.rows() || c > m.cols()) throw ParseError(p + ": index out of range");
    m(r - 1, c - 1) = scalar_from_json(e[2], p + "/2");
  }
  return m;
}

}  // namespace sidec
