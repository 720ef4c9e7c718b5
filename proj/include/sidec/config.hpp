#pragma once

#include <cstddef>

namespace sidec {

/// Size and precision knobs shared by every module.
struct Limits {
  /// Largest fiber or model dimension that will be materialized.
  std::size_t max_dimension = 64;
  /// Dyadic depth of rational square-root upper bounds (2^-20 < 1e-6).
  unsigned sqrt_depth = 20;
  /// Largest k accepted by perturbation and approximation sequences.
  unsigned max_k = 10000;
};

/// Defaults, with max_dimension overridden by SIDEC_MAX_DIM when set.
Limits default_limits();

}  // namespace sidec
