#pragma once

#include "sidec/commutant.hpp"
#include "sidec/json_codec.hpp"

namespace sidec {

/// {"summands": [{"block_size", "multiplicity", "value"}]}.
Json model_to_json(const JordanSumModel& model);
JordanSumModel model_from_json(const Json& j, const std::string& path, const Limits& limits = default_limits());

/// {"model": ..., "members": [matrix, ...]}.
Json family_to_json(const JordanSumModel& model, const IdempotentFamily& family);

struct FamilyFile {
  JordanSumModel model;
  IdempotentFamily family;
};
FamilyFile family_from_json(const Json& j, const Limits& limits = default_limits());

/// Certificate emitted by masa-match; checked by verify.
Json conjugation_to_json(const JordanSumModel& model, const IdempotentFamily& p_family,
                         const IdempotentFamily& q_family, const FamilyConjugation& c);

}  // namespace sidec
