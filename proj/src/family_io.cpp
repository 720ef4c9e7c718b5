#include "sidec/family_io.hpp"

#include "sidec/errors.hpp"

namespace sidec {

Json model_to_json(const JordanSumModel& model) {
  Json summands = Json::array();
  for (const auto& s : model.summands()) {
    Json j = Json::object();
    j["block_size"] = s.block_size;
    j["multiplicity"] = s.multiplicity;
    j["value"] = to_json(s.spectral_value);
    summands.push_back(std::move(j));
  }
  Json out = Json::object();
  out["dimension"] = model.dimension();
  out["summands"] = std::move(summands);
  return out;
}

JordanSumModel model_from_json(const Json& j, const std::string& path, const Limits& limits) {
  const Json& arr = require_member(j, "summands", path);
  if (!arr.is_array()) throw ParseError(path + "/summands: expected an array");
  std::vector<Summand> summands;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "/summands/" + std::to_string(i);
    const Json& m = require_member(arr[i], "block_size", p);
    const Json& n = require_member(arr[i], "multiplicity", p);
    if (!m.is_number_unsigned() || !n.is_number_unsigned()) throw ParseError(p + ": sizes must be counts");
    summands.push_back({m.get<std::size_t>(), n.get<std::uint64_t>(),
                        scalar_from_json(require_member(arr[i], "value", p), p + "/value"), {}});
  }
  return JordanSumModel(std::move(summands), limits);
}

Json family_to_json(const JordanSumModel& model, const IdempotentFamily& family) {
  Json out = Json::object();
  out["model"] = model_to_json(model);
  Json members = Json::array();
  for (const auto& m : family.members) members.push_back(to_json(m));
  out["members"] = std::move(members);
  return out;
}

FamilyFile family_from_json(const Json& j, const Limits& limits) {
  FamilyFile f{model_from_json(require_member(j, "model", ""), "/model", limits), {}};
  const Json& members = require_member(j, "members", "");
  if (!members.is_array()) throw ParseError("/members: expected an array");
  for (std::size_t i = 0; i < members.size(); ++i) {
    ExactMatrix m = matrix_from_json(members[i], "/members/" + std::to_string(i));
    if (m.rows() != f.model.dimension() || m.cols() != f.model.dimension()) {
      throw ParseError("/members/" + std::to_string(i) + ": size does not match the model dimension");
    }
    f.family.members.push_back(std::move(m));
  }
  return f;
}

Json conjugation_to_json(const JordanSumModel& model, const IdempotentFamily& p_family,
                         const IdempotentFamily& q_family, const FamilyConjugation& c) {
  auto matrices = [](const std::vector<ExactMatrix>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
  };
  Json out = Json::object();
  out["kind"] = "masa-match";
  out["model"] = model_to_json(model);
  out["p_members"] = matrices(p_family.members);
  out["q_members"] = matrices(q_family.members);
  out["x"] = to_json(c.x);
  out["x_inverse"] = to_json(c.x_inverse);
  out["p_atoms"] = matrices(c.p_atoms);
  out["q_atoms"] = matrices(c.q_atoms);
  out["match"] = c.match;
  return out;
}

}  // namespace sidec
