#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sidec/config.hpp"
#include "sidec/exact_matrix.hpp"

namespace sidec {

struct AtomicMass {
  std::uint64_t count = 1;
  friend bool operator==(const AtomicMass&, const AtomicMass&) = default;
};
struct ContinuousMass {
  friend bool operator==(const ContinuousMass&, const ContinuousMass&) = default;
};
using Mass = std::variant<AtomicMass, ContinuousMass>;

inline bool is_continuous(const Mass& m) { return std::holds_alternative<ContinuousMass>(m); }

/// 1-based (row, column) of a strictly upper position, as in the file format.
using EntryIndex = std::pair<std::size_t, std::size_t>;

/// One cell of the discretized measure space: on it the diagonal function
/// takes spectral_value and each strictly-upper function is constant.
struct SpectralCell {
  std::string id;
  GaussianRational spectral_value;
  Rational weight{1};
  Mass mass = AtomicMass{};
  std::size_t block_size = 1;
  std::map<EntryIndex, GaussianRational> upper_entries;

  /// Stored value at (i, j), or zero when the position is absent.
  GaussianRational entry(std::size_t i, std::size_t j) const;

  friend bool operator==(const SpectralCell&, const SpectralCell&) = default;
};

struct OperatorField {
  std::string name;
  std::vector<SpectralCell> cells;

  const SpectralCell* find(const std::string& id) const;
  friend bool operator==(const OperatorField&, const OperatorField&) = default;
};

/// Positive integer or the infinity token carried by continuous cells.
class Multiplicity {
 public:
  static Multiplicity finite(std::uint64_t n) { return Multiplicity(n); }
  static Multiplicity infinite() { return Multiplicity(std::nullopt); }

  bool is_infinite() const { return !value_.has_value(); }
  std::uint64_t value() const { return *value_; }
  std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  explicit Multiplicity(std::optional<std::uint64_t> v) : value_(v) {}
  std::optional<std::uint64_t> value_;
};

struct ProfileEntry {
  std::size_t block_size = 1;
  GaussianRational spectral_value;
  Multiplicity multiplicity = Multiplicity::finite(1);
  Rational total_weight;
  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

/// One entry per distinct (block size, spectral value), ordered by block
/// size and then spectral value.
struct MultiplicityProfile {
  std::vector<ProfileEntry> entries;

  bool has_infinite() const;
  friend bool operator==(const MultiplicityProfile&, const MultiplicityProfile&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> errors;
  /// Per block size present: whether the multiplicity function is simple.
  /// Always true for a finite-cell field.
  std::map<std::size_t, bool> simple_multiplicity;
};

ValidationReport validate_field(const OperatorField& field, const Limits& limits = default_limits());

/// Throws ValidationError listing every problem when the field is invalid.
void require_valid(const OperatorField& field, const Limits& limits = default_limits());

/// Upper triangular n×n fiber of a cell: constant diagonal, stored upper
/// entries, zeros elsewhere.
ExactMatrix fiber_matrix(const SpectralCell& cell);
ExactMatrix fiber_matrix(const OperatorField& field, const std::string& cell_id);

MultiplicityProfile multiplicity_profile(const OperatorField& field);

/// Per-position audit line of a norm certificate.
struct PositionBound {
  std::size_t i = 0;  // 1-based; i == j is the diagonal
  std::size_t j = 0;
  Rational max_modulus_squared;  // max over cells of |F_ij − G_ij|^2
  Rational upper;                // upper^2 >= max_modulus_squared
};

struct BlockBound {
  std::size_t block_size = 0;
  std::vector<PositionBound> positions;  // only positions with a nonzero difference
  Rational sum;
};

/// Certified upper bound on ‖F − G‖. Within one block size the per-position
/// essential sups are summed; across block sizes the maximum is taken, since
/// the field is a direct sum over block sizes.
struct NormCertificate {
  std::vector<BlockBound> blocks;
  Rational bound;
};

NormCertificate entry_supnorm_bound(const OperatorField& f, const OperatorField& g,
                                    const Limits& limits = default_limits());

}  // namespace sidec
