#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sidec/commutant.hpp"
#include "sidec/operator_field.hpp"

namespace sidec {

/// Class of an idempotent at one spectral value: one coordinate per block
/// size present there, block sizes in decreasing order.
struct RankVector {
  GaussianRational spectral_value;
  std::vector<std::pair<std::size_t, std::uint64_t>> coordinates;

  std::vector<std::uint64_t> counts() const;
  friend bool operator==(const RankVector&, const RankVector&) = default;
};

/// V and K0 of the commutant above one spectral value.
struct ValueDescriptor {
  GaussianRational spectral_value;
  std::size_t rank = 0;              // r_A(z)
  std::vector<std::size_t> block_sizes;  // decreasing
  RankVector identity_class;
  /// Block sizes of infinite multiplicity: their coordinate vanishes in K0.
  std::vector<std::size_t> vanishing_block_sizes;
  bool unique = true;

  std::string semigroup() const { return "N^" + std::to_string(rank); }
  std::string group() const { return "Z^" + std::to_string(rank); }
};

struct K0Descriptor {
  std::vector<ValueDescriptor> values;  // ordered by spectral value
};

/// r_A(z) = number of distinct block sizes carried at z. Requires a
/// canonical field.
std::vector<std::pair<GaussianRational, std::size_t>> compute_rank_function_ra(const OperatorField& canonical);

K0Descriptor compute_v_k0(const OperatorField& canonical);

/// Coordinate at block size m = (1/m)·Tr(Q restricted to the size-m carrier),
/// one RankVector per spectral value of the model.
std::vector<RankVector> idempotent_class_vector(const JordanSumModel& model, const ExactMatrix& q);

struct TraceObstruction {
  GaussianRational spectral_value;
  std::size_t block_size = 0;
  Rational trace_p;  // trace of P on the carrier of this summand
  Rational trace_q;
};

struct IdempotentSimilarity {
  std::optional<ExactMatrix> x;  // X·P·X⁻¹ = Q with X in the commutant
  std::optional<ExactMatrix> x_inverse;
  std::vector<TraceObstruction> obstructions;  // nonempty iff no similarity exists
};

/// Decides similarity of two idempotents inside the commutant: similar
/// exactly when their class vectors agree, in which case an explicit X is
/// returned; otherwise the carriers whose traces differ are reported.
IdempotentSimilarity find_idempotent_similarity(const JordanSumModel& model, const ExactMatrix& p,
                                                const ExactMatrix& q);

struct UniquenessWitness {
  GaussianRational spectral_value;
  std::size_t block_size = 0;
  Multiplicity multiplicity = Multiplicity::infinite();
};

struct UniquenessVerdict {
  bool unique = true;
  bool normal_operator = false;  // every cell has block size 1
  std::vector<UniquenessWitness> witnesses;
  std::string narrative;
};

/// Unique up to similarity exactly when no multiplicity is infinite.
/// Requires invertible superdiagonals; throws PreconditionError (advising a
/// perturbation first) otherwise.
UniquenessVerdict decide_uniqueness(const OperatorField& field);

}  // namespace sidec
