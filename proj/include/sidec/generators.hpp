#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "sidec/commutant.hpp"
#include "sidec/operator_field.hpp"

namespace sidec::gen {

using Rng = std::mt19937_64;

/// p/q with |p| <= max_abs and 1 <= q <= max_den.
Rational small_rational(Rng& rng, int max_abs = 5, int max_den = 4);
/// Gaussian rational; the imaginary part is zero unless complex is set.
GaussianRational small_scalar(Rng& rng, bool complex = false, int max_abs = 5, int max_den = 4);
/// Like small_scalar but never zero.
GaussianRational nonzero_scalar(Rng& rng, bool complex = false, int max_abs = 5, int max_den = 4);

/// n×n upper triangular with random entries. zero_chance is the probability
/// of any strict-upper entry being zero; the diagonal is constant unless
/// varied_diagonal is set (then each entry independently equals the first
/// with probability 1/2).
ExactMatrix upper_triangular(Rng& rng, std::size_t n, double zero_chance, bool varied_diagonal);

struct FieldShape {
  std::size_t max_block_size = 5;
  std::size_t max_cells = 10;
  std::size_t distinct_values = 3;       // spectral values drawn from a pool of this size
  double zero_superdiagonal_chance = 0.2;
  double continuous_chance = 0.0;
  bool complex = true;
  std::uint64_t max_count = 3;
};

OperatorField random_field(Rng& rng, const FieldShape& shape);

/// Partition-like models: summands of distinct (size, value), total
/// dimension at most max_dimension.
JordanSumModel random_model(Rng& rng, std::size_t max_dimension, std::size_t distinct_values = 2);

/// Random invertible element of the commutant (retries until invertible).
ExactMatrix random_commutant_invertible(Rng& rng, const JordanSumModel& model, const CommutantBasis& basis);

/// Y·E·Y⁻¹ for a random sum E of copy projections and random invertible Y
/// in the commutant; e_out receives E when non-null.
ExactMatrix random_idempotent(Rng& rng, const JordanSumModel& model, const CommutantBasis& basis,
                              ExactMatrix* e_out = nullptr);

/// Y·P·Y⁻¹ for each member of the canonical family.
IdempotentFamily conjugated_canonical_family(Rng& rng, const JordanSumModel& model, const CommutantBasis& basis);

}  // namespace sidec::gen
