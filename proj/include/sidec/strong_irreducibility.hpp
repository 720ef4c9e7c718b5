#pragma once

#include <string>
#include <vector>

#include "sidec/exact_matrix.hpp"
#include "sidec/operator_field.hpp"

namespace sidec {

struct SiVerdict {
  bool strongly_irreducible = false;
  std::string reason;
};

/// Structural test for upper triangular M: strongly irreducible exactly when
/// the diagonal is constant and no superdiagonal entry vanishes. The reason
/// names the first violated condition. Throws DimensionError if M is not
/// square upper triangular.
SiVerdict si_test_triangular(const ExactMatrix& m);

/// Independent check through Jordan structure: constant diagonal α and a
/// single Jordan block at α, i.e. weyr_sequence(M, α) = [n, n−1, …, 0].
bool si_oracle_weyr(const ExactMatrix& m);

struct CellSiResult {
  std::string cell_id;
  std::size_t block_size = 1;
  SiVerdict verdict;
  /// 1-based superdiagonal positions with 0 < |e|^2 < ε^2 (empty when ε = 0).
  std::vector<EntryIndex> near_singular;
};

struct FieldSiReport {
  std::vector<CellSiResult> cells;
  /// Every superdiagonal entry nonzero on every cell, i.e. every
  /// superdiagonal multiplication operator is invertible.
  bool superdiagonals_invertible = true;
  /// True when no cell has block size above 1.
  bool vacuous = true;
  std::vector<std::string> failing_cells;
};

FieldSiReport field_si_check(const OperatorField& field, const Rational& epsilon = Rational(0));

}  // namespace sidec
