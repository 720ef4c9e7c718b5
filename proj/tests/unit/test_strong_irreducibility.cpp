#include <doctest.h>

#include "helpers.hpp"
#include "sidec/errors.hpp"
#include "sidec/generators.hpp"
#include "sidec/linalg.hpp"
#include "sidec/strong_irreducibility.hpp"

using namespace sidec;
using namespace sidec::testing;

TEST_CASE("si_test_triangular") {
  auto v = si_test_triangular(ExactMatrix{{gr(0), gr(1)}, {gr(0), gr(0)}});
  CHECK(v.strongly_irreducible);

  v = si_test_triangular(ExactMatrix{{gr(1), gr(0)}, {gr(0), gr(1)}});
  CHECK_FALSE(v.strongly_irreducible);
  CHECK(v.reason == "zero superdiagonal entry at (1,2)");

  v = si_test_triangular(ExactMatrix{{gr(1), gr(5)}, {gr(0), gr(2)}});
  CHECK_FALSE(v.strongly_irreducible);
  CHECK(v.reason.rfind("diagonal not constant", 0) == 0);

  v = si_test_triangular(ExactMatrix{{gr(7)}});
  CHECK(v.strongly_irreducible);

  CHECK_THROWS_AS(si_test_triangular(ExactMatrix{{gr(1), gr(0)}, {gr(1), gr(1)}}), DimensionError);
  CHECK_THROWS_AS(si_test_triangular(ExactMatrix(2, 3)), DimensionError);
}

TEST_CASE("si_oracle_weyr") {
  const GaussianRational alpha(Rational(3), Rational(-2));
  CHECK(si_oracle_weyr(jordan_block(4, alpha)));
  const ExactMatrix pair[] = {jordan_block(2, alpha), jordan_block(2, alpha)};
  CHECK_FALSE(si_oracle_weyr(direct_sum(pair)));
  // Nilpotent part has rank 1 and squares to zero: blocks {2, 1}.
  const ExactMatrix m{{alpha, gr(0), gr(1)}, {gr(0), alpha, gr(1)}, {gr(0), gr(0), alpha}};
  CHECK(weyr_sequence(m, alpha) == std::vector<std::size_t>{3, 1, 0, 0});
  CHECK_FALSE(si_oracle_weyr(m));
  CHECK_FALSE(si_test_triangular(m).strongly_irreducible);
}

TEST_CASE("test and oracle agree on random triangular matrices") {
  gen::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng() % 6 + 1);
    const ExactMatrix m = gen::upper_triangular(rng, n, 0.25, trial % 4 == 0);
    REQUIRE(si_test_triangular(m).strongly_irreducible == si_oracle_weyr(m));
  }
}

TEST_CASE("oracle verdict is invariant under triangular similarity") {
  gen::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng() % 5 + 1);
    const ExactMatrix m = gen::upper_triangular(rng, n, 0.3, false);
    ExactMatrix x = gen::upper_triangular(rng, n, 0.3, true);
    for (std::size_t i = 0; i < n; ++i) x(i, i) = gen::nonzero_scalar(rng);
    const ExactMatrix conj = x * m * inverse(x);
    REQUIRE(conj.is_upper_triangular());
    REQUIRE(si_oracle_weyr(conj) == si_oracle_weyr(m));
  }
}

TEST_CASE("field_si_check") {
  auto canonical = field_si_check(three_size_field());
  CHECK(canonical.superdiagonals_invertible);
  CHECK_FALSE(canonical.vacuous);
  CHECK(canonical.failing_cells.empty());
  for (const auto& c : canonical.cells) CHECK(c.verdict.strongly_irreducible);

  auto broken = field_si_check(field_of({jordan_cell("ok", 2, gr(1)), cell("bad", 3, gr(0), {{{1, 2}, gr(1)}})}));
  CHECK_FALSE(broken.superdiagonals_invertible);
  CHECK(broken.failing_cells == std::vector<std::string>{"bad"});
  CHECK(broken.cells[1].verdict.reason == "zero superdiagonal entry at (2,3)");

  auto normal = field_si_check(field_of({cell("x", 1, gr(1)), cell("y", 1, gr(2))}));
  CHECK(normal.vacuous);
  CHECK(normal.superdiagonals_invertible);
  CHECK(normal.failing_cells.empty());

  auto near = field_si_check(field_of({cell("x", 3, gr(0), {{{1, 2}, q(1, 100)}, {{2, 3}, gr(1)}})}), Rational(1, 10));
  CHECK(near.superdiagonals_invertible);
  CHECK(near.cells[0].near_singular == std::vector<EntryIndex>{{1, 2}});
}

TEST_CASE("field_si_check is stable under reordering and splitting") {
  gen::Rng rng(23);
  gen::FieldShape shape;
  for (int trial = 0; trial < 100; ++trial) {
    OperatorField f = gen::random_field(rng, shape);
    const bool verdict = field_si_check(f).superdiagonals_invertible;
    OperatorField g = f;
    std::shuffle(g.cells.begin(), g.cells.end(), rng);
    SpectralCell twin = g.cells.front();
    twin.id += "_twin";
    g.cells.push_back(twin);
    REQUIRE(field_si_check(g).superdiagonals_invertible == verdict);
  }
}
