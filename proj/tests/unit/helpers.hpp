#pragma once

#include <string>

#include "sidec/operator_field.hpp"

namespace sidec::testing {

inline GaussianRational gr(long re, long im = 0) { return {Rational(re), Rational(im)}; }
inline GaussianRational q(long p, long d) { return GaussianRational(Rational(p, d)); }

inline SpectralCell cell(std::string id, std::size_t n, GaussianRational value,
                         std::map<EntryIndex, GaussianRational> entries = {}, std::uint64_t count = 1,
                         Rational weight = Rational(1)) {
  SpectralCell c;
  c.id = std::move(id);
  c.block_size = n;
  c.spectral_value = std::move(value);
  c.upper_entries = std::move(entries);
  c.mass = AtomicMass{count};
  c.weight = std::move(weight);
  return c;
}

inline SpectralCell continuous_cell(std::string id, std::size_t n, GaussianRational value,
                                    std::map<EntryIndex, GaussianRational> entries = {}) {
  SpectralCell c = cell(std::move(id), n, std::move(value), std::move(entries));
  c.mass = ContinuousMass{};
  return c;
}

/// Canonical cell: superdiagonal 1 everywhere.
inline SpectralCell jordan_cell(std::string id, std::size_t n, GaussianRational value, std::uint64_t count = 1) {
  std::map<EntryIndex, GaussianRational> e;
  for (std::size_t i = 1; i < n; ++i) e[{i, i + 1}] = gr(1);
  return cell(std::move(id), n, std::move(value), std::move(e), count);
}

inline OperatorField field_of(std::vector<SpectralCell> cells, std::string name = "test") {
  return {std::move(name), std::move(cells)};
}

/// J_3^(2) ⊕ J_2^(3) ⊕ J_1^(2) at 0.
inline OperatorField three_size_field() {
  return field_of({jordan_cell("a", 3, gr(0), 2), jordan_cell("b", 2, gr(0), 3), jordan_cell("c", 1, gr(0), 2)},
                  "three sizes");
}

}  // namespace sidec::testing
