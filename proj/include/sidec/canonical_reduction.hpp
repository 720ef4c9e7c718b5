#pragma once

#include <string>
#include <vector>

#include "sidec/config.hpp"
#include "sidec/exact_matrix.hpp"
#include "sidec/operator_field.hpp"

namespace sidec {

/// A nearby field whose superdiagonal entries are all bounded away from 0.
struct PerturbationCertificate {
  unsigned k = 1;
  OperatorField original;
  OperatorField perturbed;
  NormCertificate norm;  // certified ‖original − perturbed‖ <= norm.bound
  Rational bound;        // == norm.bound, always < 1/k
};

/// Replaces every superdiagonal entry e of a size-n cell by the real
/// constant 1/(2kn) when |e| < 1/(2kn); every other entry is kept.
PerturbationCertificate perturb_superdiagonals(const OperatorField& field, unsigned k,
                                               const Limits& limits = default_limits());

/// Exact re-check of both certificate claims; false on any violation.
bool check_perturbation(const PerturbationCertificate& cert);

struct CellSimilarity {
  std::string cell_id;
  ExactMatrix x;
  ExactMatrix x_inverse;
};

/// Per-cell upper triangular X with X·A(cell) = J(cell)·X, where J is the
/// target fiber.
struct SimilarityCertificate {
  OperatorField source;
  OperatorField target;
  std::vector<CellSimilarity> cells;
};

/// True iff every superdiagonal entry is 1 and all other strict-upper
/// entries are 0 on every cell.
bool is_canonical(const OperatorField& field);

/// Same cells with superdiagonal 1 and every other strict-upper entry 0.
OperatorField canonical_form(const OperatorField& field);

/// Builds the intertwiner cell by cell. With U the strictly upper part of a
/// fiber, the rows of X are r, rU, rU², …, which is the only way to satisfy
/// X·A = J·X. The free row r is normalized to (1/∏φ_{i,i+1}, 0, …, 0) so the
/// last diagonal entry of X is 1. Throws PreconditionError naming the cell
/// and position of a zero superdiagonal entry.
SimilarityCertificate build_similarity(const OperatorField& field);

/// Exact re-check: X·X⁻¹ = X⁻¹·X = I and X·A = J·X on every cell.
bool check_similarity(const SimilarityCertificate& cert);

struct CanonicalReduction {
  SimilarityCertificate certificate;
  OperatorField canonical;
};

CanonicalReduction reduce_field_to_canonical(const OperatorField& field);

struct SequenceStep {
  unsigned k = 1;
  PerturbationCertificate certificate;
  bool simple_multiplicity = true;
  bool superdiagonals_invertible = false;
};

/// A_k = perturb_superdiagonals(F, k) for k = 1..k_max. Requires every
/// multiplicity to be finite; throws PreconditionError otherwise.
std::vector<SequenceStep> approximation_sequence(const OperatorField& field, unsigned k_max,
                                                 const Limits& limits = default_limits());

/// Bounds strictly decrease whenever they are nonzero.
bool bounds_strictly_decreasing(const std::vector<SequenceStep>& steps);

}  // namespace sidec
