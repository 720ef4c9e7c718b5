#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sidec/config.hpp"
#include "sidec/errors.hpp"
#include "sidec/exact_matrix.hpp"
#include "sidec/operator_field.hpp"

namespace sidec {

/// Precondition failure that carries the offending residual (e.g. P² − P or
/// AP − PA).
class ResidualError : public PreconditionError {
 public:
  ResidualError(const std::string& what, ExactMatrix residual)
      : PreconditionError(what), residual_(std::move(residual)) {}
  const ExactMatrix& residual() const { return residual_; }

 private:
  ExactMatrix residual_;
};

/// multiplicity copies of J_{block_size}(spectral_value).
struct Summand {
  std::size_t block_size = 1;
  std::uint64_t multiplicity = 1;
  GaussianRational spectral_value;
  std::vector<std::string> cell_ids;
};

/// One Jordan block of the model, located at rows/cols [offset, offset+size).
struct JordanCopy {
  std::size_t summand = 0;
  std::size_t index = 0;  // copy number within its summand
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// Finite direct sum ⊕ J_{m_i}(z_i)^(n_i). Summands are kept sorted by
/// spectral value and then by decreasing block size; copies of a summand
/// are consecutive.
class JordanSumModel {
 public:
  explicit JordanSumModel(std::vector<Summand> summands, const Limits& limits = default_limits());

  /// Groups the atomic cells of a canonical field by (value, block size).
  /// Throws PreconditionError for non-canonical fields and for continuous
  /// cells, whose infinite multiplicity cannot be materialized.
  static JordanSumModel from_field(const OperatorField& canonical, const Limits& limits = default_limits());

  const std::vector<Summand>& summands() const { return summands_; }
  const std::vector<JordanCopy>& copies() const { return copies_; }
  std::size_t dimension() const { return dimension_; }
  const ExactMatrix& matrix() const { return matrix_; }

  std::size_t summand_offset(std::size_t s) const { return summand_offsets_[s]; }
  std::size_t summand_dimension(std::size_t s) const {
    return summands_[s].block_size * summands_[s].multiplicity;
  }
  /// Index into copies() of the first copy of summand s.
  std::size_t first_copy(std::size_t s) const { return first_copy_[s]; }
  std::vector<GaussianRational> spectral_values() const;

 private:
  std::vector<Summand> summands_;
  std::vector<JordanCopy> copies_;
  std::vector<std::size_t> summand_offsets_;
  std::vector<std::size_t> first_copy_;
  std::size_t dimension_ = 0;
  ExactMatrix matrix_;
};

/// Basis of {X : A·X = X·B}, taken as the kernel of X ↦ AX − XB.
std::vector<ExactMatrix> sylvester_kernel(const ExactMatrix& a, const ExactMatrix& b,
                                          const Limits& limits = default_limits());

struct BasisTag {
  std::size_t row_copy = 0;
  std::size_t col_copy = 0;
  std::size_t diagonal = 0;  // power of the shift spanned inside the block
};

struct CommutantBasis {
  std::vector<ExactMatrix> basis;
  std::vector<BasisTag> tags;
};

/// Commutant basis read off the block structure: between copies of sizes
/// m_r (rows) and m_c (cols) with the same value, the shift powers
/// S^0..S^{min−1} of size min(m_r, m_c), placed in the top rows when
/// m_r ≥ m_c and in the right-hand columns otherwise; nothing between
/// distinct values. Every element is checked to commute with the model.
CommutantBasis structured_commutant_basis(const JordanSumModel& model);

/// Σ n_i n_j min(m_i, m_j) over summand pairs sharing a spectral value.
std::size_t commutant_dimension_formula(const JordanSumModel& model);

struct OracleComparison {
  std::size_t structured_dimension = 0;
  std::size_t oracle_dimension = 0;
  bool spans_equal = false;
};

/// Compares the structured basis with the brute-force Sylvester kernel.
OracleComparison compare_with_oracle(const JordanSumModel& model, const CommutantBasis& basis);

/// Σ c_k · basis_k.
ExactMatrix commutant_element(const CommutantBasis& basis, std::span<const GaussianRational> coefficients);

/// Throws ResidualError unless P² = P.
void require_idempotent(const ExactMatrix& p);
/// Throws ResidualError unless A·P = P·A.
void require_in_commutant(const JordanSumModel& model, const ExactMatrix& p);

struct IdempotentFamily {
  std::vector<ExactMatrix> members;
};

/// Throws unless every member is an idempotent in the commutant and the
/// members commute pairwise.
void require_commuting_family(const JordanSumModel& model, const IdempotentFamily& family);

/// Projection onto one Jordan copy.
ExactMatrix copy_projection(const JordanSumModel& model, std::size_t copy);

/// The copy projections: a maximal abelian family of idempotents.
IdempotentFamily canonical_family(const JordanSumModel& model);

/// Permutation in the commutant exchanging two copies of the same summand.
ExactMatrix copy_swap(const JordanSumModel& model, std::size_t copy_a, std::size_t copy_b);

struct IdempotentDiagonalization {
  ExactMatrix x;
  ExactMatrix x_inverse;
  ExactMatrix diagonal;              // x · P · x_inverse
  std::vector<bool> selected_copies;  // copies on which diagonal is I
};

/// Finds invertible X in the commutant with X·P·X⁻¹ a 0/1 diagonal matrix.
/// First the image of P in each quotient M_{n_i} is brought to a 0/1
/// diagonal D_i by a scalar-block conjugation; then the remaining part,
/// which lies in the radical, is removed with X₂ = D·P₁ + (I−D)(I−P₁).
/// For an idempotent that already has a 0/1 diagonal and a triangular
/// correction this reproduces X = I + correction, X⁻¹ = I − correction.
IdempotentDiagonalization diagonalize_idempotent(const JordanSumModel& model, const ExactMatrix& p);

/// (1/m_s)·Tr of the diagonal block of summand s, for every summand.
std::vector<Rational> summand_ranks(const JordanSumModel& model, const ExactMatrix& q);

/// r_Q = Σ_s (1/m_s)·Tr(Q restricted to summand s).
Rational rank_function_rq(const JordanSumModel& model, const ExactMatrix& q);

/// Atoms of the Boolean algebra generated by the family that lie below
/// the join of its members; pairwise orthogonal and summing to that join.
std::vector<ExactMatrix> extract_minimal_idempotents(const JordanSumModel& model, const IdempotentFamily& family);

/// True when the atoms number Σ n_i, each has r = 1, and they sum to I.
bool is_maximal_family(const JordanSumModel& model, const IdempotentFamily& family);

struct FamilyConjugation {
  ExactMatrix x;
  ExactMatrix x_inverse;
  std::vector<ExactMatrix> p_atoms;
  std::vector<ExactMatrix> q_atoms;
  /// match[i] = index of the P atom that X·q_atoms[i]·X⁻¹ equals.
  std::vector<std::size_t> match;
};

/// Invertible X in the commutant with X·Q·X⁻¹ in the lattice of P_fam for
/// every member Q of Q_fam, mapping minimal idempotents onto minimal
/// idempotents of the same block size and value.
FamilyConjugation conjugate_idempotent_families(const JordanSumModel& model, const IdempotentFamily& p_family,
                                                const IdempotentFamily& q_family);

}  // namespace sidec
