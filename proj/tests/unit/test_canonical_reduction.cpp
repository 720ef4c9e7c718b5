#include <doctest.h>

#include "helpers.hpp"
#include "sidec/canonical_reduction.hpp"
#include "sidec/errors.hpp"
#include "sidec/generators.hpp"
#include "sidec/strong_irreducibility.hpp"

using namespace sidec;
using namespace sidec::testing;

TEST_CASE("perturb_superdiagonals") {
  const OperatorField big = field_of({cell("x", 2, gr(0), {{{1, 2}, gr(1)}})});
  auto c1 = perturb_superdiagonals(big, 1);
  CHECK(c1.perturbed == big);
  CHECK(c1.bound == 0);

  const OperatorField zero = field_of({cell("x", 2, gr(0))});
  CHECK(perturb_superdiagonals(zero, 1).perturbed.cells[0].entry(1, 2) == q(1, 4));

  auto c10 = perturb_superdiagonals(zero, 10);
  CHECK(c10.perturbed.cells[0].entry(1, 2) == q(1, 40));
  CHECK(c10.bound == Rational(1, 40));
  CHECK(c10.bound < Rational(1, 10));
  CHECK(check_perturbation(c10));

  // Off-superdiagonal entries and 1x1 cells are untouched.
  const OperatorField mixed = field_of({cell("x", 3, gr(1), {{{1, 3}, gr(5)}, {{1, 2}, q(1, 100)}}), cell("y", 1, gr(2))});
  auto cm = perturb_superdiagonals(mixed, 2);
  CHECK(cm.perturbed.cells[0].entry(1, 3) == gr(5));
  CHECK(cm.perturbed.cells[0].entry(1, 2) == q(1, 12));
  CHECK(cm.perturbed.cells[0].entry(2, 3) == q(1, 12));
  CHECK(cm.perturbed.cells[1] == mixed.cells[1]);
  CHECK(check_perturbation(cm));

  CHECK_THROWS_AS(perturb_superdiagonals(zero, 0), PreconditionError);
}

TEST_CASE("tampered perturbation certificates are rejected") {
  auto cert = perturb_superdiagonals(field_of({cell("x", 2, gr(0))}), 3);
  REQUIRE(check_perturbation(cert));
  auto bad_bound = cert;
  bad_bound.bound = Rational(1, 3);
  CHECK_FALSE(check_perturbation(bad_bound));
  auto bad_entry = cert;
  bad_entry.perturbed.cells[0].upper_entries[{1, 2}] = q(1, 100);
  CHECK_FALSE(check_perturbation(bad_entry));
}

TEST_CASE("perturbation preserves profile and spectral values") {
  gen::Rng rng(31);
  gen::FieldShape shape;
  for (int trial = 0; trial < 50; ++trial) {
    const OperatorField f = gen::random_field(rng, shape);
    const auto k = static_cast<unsigned>(rng() % 20 + 1);
    const auto cert = perturb_superdiagonals(f, k);
    REQUIRE(multiplicity_profile(cert.perturbed) == multiplicity_profile(f));
    REQUIRE(field_si_check(cert.perturbed).superdiagonals_invertible);
    REQUIRE(check_perturbation(cert));
  }
}

TEST_CASE("build_similarity") {
  const GaussianRational alpha(Rational(2), Rational(1));
  const auto two = build_similarity(field_of({cell("x", 2, alpha, {{{1, 2}, gr(2)}})}));
  REQUIRE(two.cells.size() == 1);
  // Rows r, r·U with r = (1/2, 0): X = diag(1/2, 1) = diag(1, 2) / 2.
  CHECK(two.cells[0].x == ExactMatrix{{q(1, 2), gr(0)}, {gr(0), gr(1)}});
  CHECK(fiber_matrix(two.target.cells[0]) == jordan_block(2, alpha));
  CHECK(check_similarity(two));

  const auto normal = build_similarity(field_of({cell("x", 1, gr(3)), cell("y", 1, gr(4))}));
  CHECK(normal.target == normal.source);
  for (const auto& c : normal.cells) CHECK(c.x == ExactMatrix::identity(1));

  const GaussianRational a(Rational(3)), b(Rational(0), Rational(-1, 2)), c(Rational(7, 3));
  const auto three = build_similarity(field_of({cell("x", 3, alpha, {{{1, 2}, a}, {{2, 3}, b}, {{1, 3}, c}})}));
  CHECK(fiber_matrix(three.target.cells[0]) == jordan_block(3, alpha));
  CHECK(three.cells[0].x.is_upper_triangular());
  CHECK(three.cells[0].x(2, 2) == gr(1));
  CHECK(check_similarity(three));

  try {
    (void)build_similarity(field_of({cell("zz", 3, gr(0), {{{1, 2}, gr(1)}})}));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("\"zz\"") != std::string::npos);
    CHECK(msg.find("(2,3)") != std::string::npos);
  }
}

TEST_CASE("tampered similarity certificates are rejected") {
  auto cert = build_similarity(field_of({cell("x", 3, gr(1), {{{1, 2}, gr(2)}, {{2, 3}, gr(3)}})}));
  REQUIRE(check_similarity(cert));
  auto bad = cert;
  bad.cells[0].x(0, 1) += gr(1);
  CHECK_FALSE(check_similarity(bad));
  auto bad_inverse = cert;
  bad_inverse.cells[0].x_inverse(0, 0) += gr(1);
  CHECK_FALSE(check_similarity(bad_inverse));
}

TEST_CASE("reduction on random invertible fields and idempotence") {
  gen::Rng rng(32);
  gen::FieldShape shape;
  shape.zero_superdiagonal_chance = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const OperatorField f = gen::random_field(rng, shape);
    const auto red = reduce_field_to_canonical(f);
    REQUIRE(check_similarity(red.certificate));
    REQUIRE(is_canonical(red.canonical));
    REQUIRE(multiplicity_profile(red.canonical) == multiplicity_profile(f));

    const auto again = reduce_field_to_canonical(red.canonical);
    REQUIRE(again.canonical == red.canonical);
    for (const auto& c : again.certificate.cells) REQUIRE(c.x == ExactMatrix::identity(c.x.rows()));
  }
  CHECK_THROWS_AS(reduce_field_to_canonical(field_of({cell("x", 2, gr(0))})), PreconditionError);
}

TEST_CASE("approximation_sequence") {
  const OperatorField invertible = three_size_field();
  for (const auto& step : approximation_sequence(invertible, 4)) {
    CHECK(step.certificate.perturbed == invertible);
    CHECK(step.certificate.bound == 0);
  }

  // n = 3 cell with one zero superdiagonal: bounds 1/(2n), 1/(4n), 1/(6n).
  const auto steps = approximation_sequence(field_of({cell("x", 3, gr(0), {{{1, 2}, gr(1)}})}), 3);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].certificate.bound == Rational(1, 6));
  CHECK(steps[1].certificate.bound == Rational(1, 12));
  CHECK(steps[2].certificate.bound == Rational(1, 18));
  for (const auto& s : steps) {
    CHECK(s.superdiagonals_invertible);
    CHECK(s.simple_multiplicity);
  }
  CHECK(bounds_strictly_decreasing(steps));

  CHECK_THROWS_AS(approximation_sequence(field_of({continuous_cell("x", 2, gr(0))}), 3), PreconditionError);
}
