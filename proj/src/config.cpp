#include "sidec/config.hpp"

#include <cstdlib>
#include <string>

namespace sidec {

Limits default_limits() {
  Limits limits;
  if (const char* env = std::getenv("SIDEC_MAX_DIM"); env != nullptr && *env != '\0') {
    try {
      unsigned long v = std::stoul(env);
      if (v > 0) limits.max_dimension = v;
    } catch (const std::exception&) {
      // ignore malformed overrides
    }
  }
  return limits;
}

}  // namespace sidec
