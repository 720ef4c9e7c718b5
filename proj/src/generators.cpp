#include "sidec/generators.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sidec/linalg.hpp"

namespace sidec::gen {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

Rational small_rational(Rng& rng, int max_abs, int max_den) {
  Rational r(uniform_int(rng, -max_abs, max_abs), uniform_int(rng, 1, max_den));
  r.canonicalize();
  return r;
}

GaussianRational small_scalar(Rng& rng, bool complex, int max_abs, int max_den) {
  Rational re = small_rational(rng, max_abs, max_den);
  Rational im = complex && chance(rng, 0.5) ? small_rational(rng, max_abs, max_den) : Rational(0);
  return {re, im};
}

GaussianRational nonzero_scalar(Rng& rng, bool complex, int max_abs, int max_den) {
  for (;;) {
    GaussianRational z = small_scalar(rng, complex, max_abs, max_den);
    if (!z.is_zero()) return z;
  }
}

ExactMatrix upper_triangular(Rng& rng, std::size_t n, double zero_chance, bool varied_diagonal) {
  ExactMatrix m(n, n);
  const GaussianRational alpha = small_scalar(rng);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = varied_diagonal && chance(rng, 0.5) ? small_scalar(rng) : alpha;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!chance(rng, zero_chance)) m(i, j) = nonzero_scalar(rng);
    }
  }
  return m;
}

OperatorField random_field(Rng& rng, const FieldShape& shape) {
  std::vector<GaussianRational> pool;
  while (pool.size() < std::max<std::size_t>(shape.distinct_values, 1)) {
    GaussianRational z = small_scalar(rng, shape.complex, 3, 2);
    if (std::find(pool.begin(), pool.end(), z) == pool.end()) pool.push_back(z);
  }
  OperatorField field;
  field.name = "random";
  const auto cells = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_cells)));
  for (std::size_t c = 0; c < cells; ++c) {
    SpectralCell cell;
    cell.id = "c" + std::to_string(c);
    cell.block_size = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_block_size)));
    cell.spectral_value = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
    cell.weight = Rational(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
    cell.weight.canonicalize();
    if (chance(rng, shape.continuous_chance)) {
      cell.mass = ContinuousMass{};
    } else {
      cell.mass = AtomicMass{static_cast<std::uint64_t>(uniform_int(rng, 1, static_cast<int>(shape.max_count)))};
    }
    for (std::size_t i = 1; i <= cell.block_size; ++i) {
      for (std::size_t j = i + 1; j <= cell.block_size; ++j) {
        GaussianRational e;
        if (j == i + 1) {
          // Mix tiny entries in so the threshold branch is exercised.
          if (!chance(rng, shape.zero_superdiagonal_chance)) {
            e = nonzero_scalar(rng, shape.complex);
            if (chance(rng, 0.25)) e *= GaussianRational(Rational(1, uniform_int(rng, 20, 400)));
          }
        } else if (chance(rng, 0.5)) {
          e = nonzero_scalar(rng, shape.complex);
        }
        if (!e.is_zero()) cell.upper_entries[{i, j}] = e;
      }
    }
    field.cells.push_back(std::move(cell));
  }
  return field;
}

JordanSumModel random_model(Rng& rng, std::size_t max_dimension, std::size_t distinct_values) {
  std::vector<Summand> summands;
  std::set<std::pair<std::size_t, std::size_t>> used;  // (value index, size)
  std::size_t dim = 0;
  int misses = 0;
  const auto target = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dimension)));
  while (dim < target) {
    const std::size_t room = target - dim;
    const auto size = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(std::min<std::size_t>(room, 5))));
    const auto value = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(distinct_values) - 1));
    const auto mult = static_cast<std::uint64_t>(uniform_int(rng, 1, static_cast<int>(std::max<std::size_t>(room / size, 1))));
    if (!used.insert({value, size}).second) {
      if (++misses > 50) break;
      continue;
    }
    summands.push_back({size, std::min<std::uint64_t>(mult, 3), GaussianRational(Rational(static_cast<long>(value))), {}});
    dim += size * summands.back().multiplicity;
  }
  return JordanSumModel(std::move(summands));
}

ExactMatrix random_commutant_invertible(Rng& rng, const JordanSumModel& model, const CommutantBasis& basis) {
  for (;;) {
    std::vector<GaussianRational> coeff(basis.basis.size());
    for (auto& c : coeff) c = chance(rng, 0.6) ? small_scalar(rng, false, 3, 2) : GaussianRational();
    ExactMatrix y = commutant_element(basis, coeff);
    if (y.rows() == 0) y = ExactMatrix::identity(model.dimension());
    if (rank(y) == model.dimension()) return y;
  }
}

ExactMatrix random_idempotent(Rng& rng, const JordanSumModel& model, const CommutantBasis& basis, ExactMatrix* e_out) {
  ExactMatrix e(model.dimension(), model.dimension());
  for (std::size_t c = 0; c < model.copies().size(); ++c) {
    if (chance(rng, 0.5)) e += copy_projection(model, c);
  }
  if (e_out != nullptr) *e_out = e;
  const ExactMatrix y = random_commutant_invertible(rng, model, basis);
  return y * e * inverse(y);
}

IdempotentFamily conjugated_canonical_family(Rng& rng, const JordanSumModel& model, const CommutantBasis& basis) {
  const ExactMatrix y = random_commutant_invertible(rng, model, basis);
  const ExactMatrix yi = inverse(y);
  IdempotentFamily fam = canonical_family(model);
  for (auto& m : fam.members) m = y * m * yi;
  return fam;
}

}  // namespace sidec::gen
