#include <doctest.h>

#include "helpers.hpp"
#include "sidec/commutant.hpp"
#include "sidec/errors.hpp"
#include "sidec/generators.hpp"
#include "sidec/linalg.hpp"

using namespace sidec;
using namespace sidec::testing;

namespace {

JordanSumModel model_of(std::vector<std::tuple<std::size_t, std::uint64_t, long>> parts) {
  std::vector<Summand> s;
  for (auto [m, n, z] : parts) s.push_back({m, n, gr(z), {}});
  return JordanSumModel(std::move(s));
}

JordanSumModel three_size_model() { return JordanSumModel::from_field(three_size_field()); }

bool same_span(const std::vector<ExactMatrix>& a, const std::vector<ExactMatrix>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::vector<ExactMatrix> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = rank(stack_vectorized(a));
  return ra == rank(stack_vectorized(b)) && ra == rank(stack_vectorized(both));
}

}  // namespace

TEST_CASE("model construction") {
  const auto m = three_size_model();
  CHECK(m.dimension() == 14);
  CHECK(m.copies().size() == 7);
  REQUIRE(m.summands().size() == 3);
  CHECK(m.summands()[0].block_size == 3);
  CHECK(m.summands()[0].multiplicity == 2);
  CHECK(m.summands()[1].block_size == 2);
  CHECK(m.summands()[2].block_size == 1);

  CHECK_THROWS_AS(model_of({{2, 1, 0}, {2, 3, 0}}), PreconditionError);
  CHECK_THROWS_AS(JordanSumModel::from_field(field_of({cell("x", 2, gr(0))})), PreconditionError);
  CHECK_THROWS_AS(JordanSumModel::from_field(field_of({continuous_cell("x", 2, gr(0), {{{1, 2}, gr(1)}})})),
                  PreconditionError);
  Limits tight;
  tight.max_dimension = 10;
  CHECK_THROWS_AS(JordanSumModel(std::vector<Summand>{{3, 4, gr(0), {}}}, tight), DimensionError);
}

TEST_CASE("sylvester_kernel") {
  const auto k22 = sylvester_kernel(jordan_block(2, gr(0)), jordan_block(2, gr(0)));
  CHECK(k22.size() == 2);
  CHECK(same_span(k22, {ExactMatrix::identity(2), shift_power(2, 1)}));

  const auto k32 = sylvester_kernel(jordan_block(3, gr(0)), jordan_block(2, gr(0)));
  CHECK(k32.size() == 2);
  for (const auto& x : k32) {
    CHECK(x.rows() == 3);
    CHECK(x.cols() == 2);
    CHECK(x(2, 0).is_zero());
    CHECK(x(2, 1).is_zero());
  }

  CHECK(sylvester_kernel(jordan_block(2, gr(0)), jordan_block(2, gr(1))).empty());
}

TEST_CASE("intertwiner shapes for all sizes up to 6") {
  for (std::size_t m1 = 1; m1 <= 6; ++m1) {
    for (std::size_t m2 = 1; m2 <= 6; ++m2) {
      const auto k = sylvester_kernel(jordan_block(m1, gr(2)), jordan_block(m2, gr(2)));
      REQUIRE(k.size() == std::min(m1, m2));
      for (const auto& x : k) {
        // Tall: bottom m1 − m2 rows vanish. Wide: left m2 − m1 columns vanish.
        for (std::size_t i = 0; i < m1; ++i)
          for (std::size_t j = 0; j < m2; ++j) {
            if (m1 > m2 && i >= m2) REQUIRE(x(i, j).is_zero());
            if (m2 > m1 && j < m2 - m1) REQUIRE(x(i, j).is_zero());
          }
      }
    }
  }
}

TEST_CASE("structured_commutant_basis") {
  const auto j3 = model_of({{3, 1, 0}});
  const auto b3 = structured_commutant_basis(j3);
  REQUIRE(b3.basis.size() == 3);
  CHECK(b3.basis[0] == ExactMatrix::identity(3));
  CHECK(b3.basis[1] == shift_power(3, 1));
  CHECK(b3.basis[2] == shift_power(3, 2));

  const auto m32 = model_of({{3, 1, 0}, {2, 1, 0}});
  CHECK(structured_commutant_basis(m32).basis.size() == 9);
  CHECK(commutant_dimension_formula(m32) == 9);

  const auto ex = three_size_model();
  const auto bex = structured_commutant_basis(ex);
  CHECK(bex.basis.size() == 78);
  CHECK(commutant_dimension_formula(ex) == 78);
  const auto cmp = compare_with_oracle(ex, bex);
  CHECK(cmp.oracle_dimension == 78);
  CHECK(cmp.spans_equal);

  for (std::size_t m = 1; m <= 8; ++m) CHECK(structured_commutant_basis(model_of({{m, 1, 0}})).basis.size() == m);

  // Nothing links distinct spectral values.
  const auto split = model_of({{2, 1, 0}, {2, 1, 1}});
  CHECK(structured_commutant_basis(split).basis.size() == 4);
  CHECK(compare_with_oracle(split, structured_commutant_basis(split)).spans_equal);
}

TEST_CASE("structured basis matches the oracle on random models") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto model = gen::random_model(rng, 10, 2);
    const auto basis = structured_commutant_basis(model);
    const auto cmp = compare_with_oracle(model, basis);
    REQUIRE(cmp.spans_equal);
    REQUIRE(cmp.structured_dimension == commutant_dimension_formula(model));
  }
}

TEST_CASE("idempotent preconditions carry residuals") {
  const auto m = model_of({{2, 1, 0}});
  const ExactMatrix not_idem = ExactMatrix::identity(2) * gr(2);
  try {
    require_idempotent(not_idem);
    FAIL("expected ResidualError");
  } catch (const ResidualError& e) {
    CHECK(e.residual() == ExactMatrix::identity(2) * gr(2));
  }
  const ExactMatrix outside{{gr(1), gr(0)}, {gr(0), gr(0)}};
  CHECK_THROWS_AS(require_in_commutant(m, outside), ResidualError);
  CHECK_THROWS_AS(diagonalize_idempotent(m, outside), ResidualError);
}

TEST_CASE("diagonalize_idempotent on the 4x4 block example") {
  const auto m = model_of({{1, 4, 0}});
  const ExactMatrix p{{gr(1), gr(0), gr(0), gr(5)}, {gr(0), gr(0), gr(3), gr(0)}, {gr(0), gr(0), gr(1), gr(0)}, {gr(0), gr(0), gr(0), gr(0)}};
  const auto d = diagonalize_idempotent(m, p);
  CHECK(d.x == ExactMatrix{{gr(1), gr(0), gr(0), gr(5)}, {gr(0), gr(1), gr(-3), gr(0)}, {gr(0), gr(0), gr(1), gr(0)}, {gr(0), gr(0), gr(0), gr(1)}});
  CHECK(d.x_inverse == ExactMatrix{{gr(1), gr(0), gr(0), gr(-5)}, {gr(0), gr(1), gr(3), gr(0)}, {gr(0), gr(0), gr(1), gr(0)}, {gr(0), gr(0), gr(0), gr(1)}});
  const GaussianRational diag[] = {gr(1), gr(0), gr(1), gr(0)};
  CHECK(d.diagonal == ExactMatrix::diagonal(diag));
  CHECK(d.x * p * d.x_inverse == d.diagonal);
}

TEST_CASE("diagonalize_idempotent with general block sizes") {
  gen::Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t sz[4];
    for (auto& s : sz) s = rng() % 3 + 1;
    const std::size_t n = sz[0] + sz[1] + sz[2] + sz[3];
    const auto model = model_of({{1, n, 0}});
    const std::size_t o[4] = {0, sz[0], sz[0] + sz[1], sz[0] + sz[1] + sz[2]};
    ExactMatrix p(n, n), x = ExactMatrix::identity(n);
    for (std::size_t i = 0; i < sz[0]; ++i) p(o[0] + i, o[0] + i) = 1;
    for (std::size_t i = 0; i < sz[2]; ++i) p(o[2] + i, o[2] + i) = 1;
    for (std::size_t i = 0; i < sz[0]; ++i)
      for (std::size_t j = 0; j < sz[3]; ++j) x(o[0] + i, o[3] + j) = p(o[0] + i, o[3] + j) = gen::small_scalar(rng, true);
    for (std::size_t i = 0; i < sz[1]; ++i)
      for (std::size_t j = 0; j < sz[2]; ++j) {
        p(o[1] + i, o[2] + j) = gen::small_scalar(rng, true);
        x(o[1] + i, o[2] + j) = -p(o[1] + i, o[2] + j);
      }
    const auto d = diagonalize_idempotent(model, p);
    REQUIRE(d.x == x);
    REQUIRE(d.x_inverse == inverse(x));
    REQUIRE(d.diagonal == x * p * d.x_inverse);
  }
}

TEST_CASE("diagonalize_idempotent trivial and round trip cases") {
  const auto ex = three_size_model();
  const auto e = copy_projection(ex, 0) + copy_projection(ex, 3);
  const auto d = diagonalize_idempotent(ex, e);
  CHECK(d.x == ExactMatrix::identity(14));
  CHECK(d.diagonal == e);

  gen::Rng rng(43);
  const auto basis = structured_commutant_basis(ex);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix e0;
    const ExactMatrix p = gen::random_idempotent(rng, ex, basis, &e0);
    const auto r = diagonalize_idempotent(ex, p);
    REQUIRE(r.diagonal.is_diagonal());
    REQUIRE(r.diagonal * r.diagonal == r.diagonal);
    REQUIRE(r.diagonal.trace() == p.trace());
    REQUIRE(commutator(ex.matrix(), r.x).is_zero());
    REQUIRE(summand_ranks(ex, r.diagonal) == summand_ranks(ex, e0));
  }
}

TEST_CASE("rank_function_rq") {
  const auto ex = three_size_model();
  CHECK(rank_function_rq(ex, ExactMatrix::identity(14)) == 7);
  CHECK(rank_function_rq(ex, ExactMatrix(14, 14)) == 0);
  CHECK(rank_function_rq(ex, copy_projection(ex, 0)) == 1);
  CHECK_THROWS_AS(rank_function_rq(ex, ExactMatrix::identity(14) * gr(2)), ResidualError);

  gen::Rng rng(44);
  const auto basis = structured_commutant_basis(ex);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix e0;
    const ExactMatrix p = gen::random_idempotent(rng, ex, basis, &e0);
    REQUIRE(rank_function_rq(ex, p) == rank_function_rq(ex, e0));
    // Orthogonal pieces add up.
    const ExactMatrix y = gen::random_commutant_invertible(rng, ex, basis);
    const ExactMatrix yi = inverse(y);
    const ExactMatrix a = y * copy_projection(ex, 1) * yi, b = y * copy_projection(ex, 4) * yi;
    REQUIRE(rank_function_rq(ex, a + b) == rank_function_rq(ex, a) + rank_function_rq(ex, b));
  }
}

TEST_CASE("extract_minimal_idempotents") {
  const auto ex = three_size_model();
  const auto atoms = extract_minimal_idempotents(ex, canonical_family(ex));
  CHECK(atoms.size() == 7);
  for (const auto& a : atoms) CHECK(rank_function_rq(ex, a) == 1);
  CHECK(is_maximal_family(ex, canonical_family(ex)));

  const auto j2 = model_of({{2, 1, 0}});
  const auto single = extract_minimal_idempotents(j2, IdempotentFamily{{ExactMatrix(2, 2), ExactMatrix::identity(2)}});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == ExactMatrix::identity(2));

  gen::Rng rng(45);
  const auto basis = structured_commutant_basis(ex);
  const auto fam = gen::conjugated_canonical_family(rng, ex, basis);
  const auto conj_atoms = extract_minimal_idempotents(ex, fam);
  CHECK(conj_atoms.size() == 7);
  CHECK(is_maximal_family(ex, fam));

  // A partial family is not maximal.
  IdempotentFamily partial{{copy_projection(ex, 0) + copy_projection(ex, 1)}};
  CHECK_FALSE(is_maximal_family(ex, partial));

  CHECK_THROWS(extract_minimal_idempotents(model_of({{1, 2, 0}}), IdempotentFamily{{ExactMatrix{{gr(1), gr(0)}, {gr(0), gr(0)}}, ExactMatrix{{gr(1), gr(1)}, {gr(0), gr(0)}}}}));
}

TEST_CASE("conjugate_idempotent_families") {
  const auto ex = three_size_model();
  const auto canon = canonical_family(ex);
  const auto same = conjugate_idempotent_families(ex, canon, canon);
  CHECK(same.x == ExactMatrix::identity(14));

  gen::Rng rng(46);
  const auto basis = structured_commutant_basis(ex);
  for (int trial = 0; trial < 3; ++trial) {
    const auto q = gen::conjugated_canonical_family(rng, ex, basis);
    const auto c = conjugate_idempotent_families(ex, canon, q);
    REQUIRE(commutator(ex.matrix(), c.x).is_zero());
    REQUIRE(c.x * c.x_inverse == ExactMatrix::identity(14));
    for (const auto& member : q.members) {
      const ExactMatrix image = c.x * member * c.x_inverse;
      REQUIRE(image.is_diagonal());
    }
  }

  // Permuted copies within each summand.
  IdempotentFamily permuted;
  for (std::size_t c : {1, 0, 4, 2, 3, 6, 5}) permuted.members.push_back(copy_projection(ex, c));
  const auto pc = conjugate_idempotent_families(ex, canon, permuted);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(pc.x * pc.q_atoms[i] * pc.x_inverse == pc.p_atoms[pc.match[i]]);
    CHECK(rank_function_rq(ex, pc.p_atoms[pc.match[i]]) == 1);
  }

  CHECK_THROWS_AS(conjugate_idempotent_families(ex, canon, IdempotentFamily{{ExactMatrix::identity(14)}}), PreconditionError);
}
