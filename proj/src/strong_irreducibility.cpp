#include "sidec/strong_irreducibility.hpp"

#include "sidec/linalg.hpp"

namespace sidec {

namespace {

void require_triangular(const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionError("strong irreducibility test needs a square matrix");
  if (!m.is_upper_triangular()) throw DimensionError("strong irreducibility test needs an upper triangular matrix");
}

std::string pos(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

SiVerdict si_test_triangular(const ExactMatrix& m) {
  require_triangular(m);
  const std::size_t n = m.rows();
  for (std::size_t i = 1; i < n; ++i) {
    if (m(i, i) != m(0, 0)) {
      return {false, "diagonal not constant: entry " + pos(i + 1, i + 1) + " = " + m(i, i).to_string() +
                         " differs from (1,1) = " + m(0, 0).to_string()};
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (m(i, i + 1).is_zero()) return {false, "zero superdiagonal entry at " + pos(i + 1, i + 2)};
  }
  if (n <= 1) return {true, "1x1 matrix"};
  return {true, "constant diagonal and nonzero superdiagonal"};
}

bool si_oracle_weyr(const ExactMatrix& m) {
  require_triangular(m);
  const std::size_t n = m.rows();
  if (n == 0) return false;
  const GaussianRational alpha = m(0, 0);
  for (std::size_t i = 1; i < n; ++i) {
    if (m(i, i) != alpha) return false;
  }
  const auto seq = weyr_sequence(m, alpha);
  for (std::size_t k = 0; k <= n; ++k) {
    if (seq[k] != n - k) return false;
  }
  return true;
}

FieldSiReport field_si_check(const OperatorField& field, const Rational& epsilon) {
  FieldSiReport report;
  const Rational eps2 = epsilon * epsilon;
  for (const auto& cell : field.cells) {
    CellSiResult r;
    r.cell_id = cell.id;
    r.block_size = cell.block_size;
    r.verdict = si_test_triangular(fiber_matrix(cell));
    if (cell.block_size > 1) report.vacuous = false;
    for (std::size_t i = 1; i < cell.block_size; ++i) {
      const GaussianRational e = cell.entry(i, i + 1);
      if (e.is_zero()) {
        report.superdiagonals_invertible = false;
      } else if (sgn(eps2) > 0 && e.modulus_squared() < eps2) {
        r.near_singular.push_back({i, i + 1});
      }
    }
    if (!r.verdict.strongly_irreducible) report.failing_cells.push_back(cell.id);
    report.cells.push_back(std::move(r));
  }
  return report;
}

}  // namespace sidec
