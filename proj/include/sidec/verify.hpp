#pragma once

#include <string>
#include <vector>

#include "sidec/json_codec.hpp"

namespace sidec::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Result {
  std::string kind;  // "report" or "masa-match"
  std::vector<Check> checks;
  bool ok() const;
};

/// Re-checks every certificate in a structured report or a masa-match
/// certificate using matrix products and exact comparisons only. Nothing
/// from the constructing modules is reused: fibers, canonical forms and
/// model matrices are rebuilt here from the raw JSON.
Result verify_document(const Json& doc);

}  // namespace sidec::verify
