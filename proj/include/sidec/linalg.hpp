#pragma once

#include <cstddef>
#include <vector>

#include "sidec/errors.hpp"
#include "sidec/exact_matrix.hpp"

namespace sidec {

/// Raised by inverse() on singular input; carries a nonzero kernel vector.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(ExactMatrix witness)
      : Error("matrix is singular"), witness_(std::move(witness)) {}
  const ExactMatrix& witness() const { return witness_; }

 private:
  ExactMatrix witness_;
};

/// Reduced row echelon form computed with full pivoting. The pivot at each
/// step is the first nonzero of the remaining submatrix in row-major order,
/// so the output is fully deterministic.
struct Elimination {
  ExactMatrix reduced;                   // columns permuted by column_order
  std::vector<std::size_t> column_order;  // reduced column p is original column column_order[p]
  std::size_t rank = 0;
};

Elimination eliminate(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Column vectors spanning ker M; exactly cols − rank of them, each scaled
/// so its first nonzero entry is 1.
std::vector<ExactMatrix> kernel_basis(const ExactMatrix& m);

/// Exact inverse. Throws DimensionError for non-square input and
/// SingularMatrixError (with a kernel witness) for singular input.
ExactMatrix inverse(const ExactMatrix& m);

/// [rank((M − αI)^0), rank((M − αI)^1), …, rank((M − αI)^n)].
std::vector<std::size_t> weyr_sequence(const ExactMatrix& m, const GaussianRational& alpha);

/// Jordan block sizes at α, largest first, recovered from a Weyr sequence.
std::vector<std::size_t> jordan_block_sizes(const std::vector<std::size_t>& weyr);

/// Flattens matrices of a common shape to rows of a (count × rows·cols)
/// matrix; rank of the result is the dimension of their span.
ExactMatrix stack_vectorized(const std::vector<ExactMatrix>& ms);

}  // namespace sidec
