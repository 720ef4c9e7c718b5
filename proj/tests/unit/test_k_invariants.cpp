#include <doctest.h>

#include "helpers.hpp"
#include "sidec/canonical_reduction.hpp"
#include "sidec/errors.hpp"
#include "sidec/generators.hpp"
#include "sidec/k_invariants.hpp"
#include "sidec/linalg.hpp"

using namespace sidec;
using namespace sidec::testing;

namespace {

std::vector<std::uint64_t> counts_at(const std::vector<RankVector>& v, std::size_t i = 0) { return v.at(i).counts(); }

}  // namespace

TEST_CASE("compute_rank_function_ra") {
  const auto ex = compute_rank_function_ra(three_size_field());
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].second == 3);

  CHECK(compute_rank_function_ra(field_of({jordan_cell("x", 4, gr(1), 3)}))[0].second == 1);

  const auto two = compute_rank_function_ra(
      field_of({jordan_cell("a", 2, gr(1)), jordan_cell("b", 1, gr(1)), jordan_cell("c", 4, gr(2))}));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == std::pair<GaussianRational, std::size_t>{gr(1), 2});
  CHECK(two[1] == std::pair<GaussianRational, std::size_t>{gr(2), 1});
}

TEST_CASE("compute_v_k0") {
  const auto k = compute_v_k0(three_size_field());
  REQUIRE(k.values.size() == 1);
  const auto& v = k.values[0];
  CHECK(v.rank == 3);
  CHECK(v.semigroup() == "N^3");
  CHECK(v.group() == "Z^3");
  CHECK(v.block_sizes == std::vector<std::size_t>{3, 2, 1});
  CHECK(v.identity_class.counts() == std::vector<std::uint64_t>{2, 3, 2});
  CHECK(v.unique);

  const auto one = compute_v_k0(field_of({jordan_cell("x", 1, gr(0))}));
  CHECK(one.values[0].semigroup() == "N^1");
  CHECK(one.values[0].group() == "Z^1");
  CHECK(one.values[0].identity_class.counts() == std::vector<std::uint64_t>{1});

  const auto inf = compute_v_k0(field_of({continuous_cell("x", 2, gr(0), {{{1, 2}, gr(1)}})}));
  CHECK(inf.values[0].vanishing_block_sizes == std::vector<std::size_t>{2});
  CHECK(inf.values[0].identity_class.counts() == std::vector<std::uint64_t>{0});
  CHECK_FALSE(inf.values[0].unique);

  CHECK_THROWS_AS(compute_v_k0(field_of({cell("x", 2, gr(0), {{{1, 2}, gr(3)}})})), PreconditionError);
}

TEST_CASE("rank function agrees with the K0 descriptor") {
  gen::Rng rng(51);
  gen::FieldShape shape;
  shape.zero_superdiagonal_chance = 0;
  shape.continuous_chance = 0.2;
  for (int trial = 0; trial < 30; ++trial) {
    const auto canon = canonical_form(gen::random_field(rng, shape));
    const auto ra = compute_rank_function_ra(canon);
    const auto k = compute_v_k0(canon);
    REQUIRE(ra.size() == k.values.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
      REQUIRE(ra[i].first == k.values[i].spectral_value);
      REQUIRE(ra[i].second == k.values[i].rank);
    }
  }
}

TEST_CASE("idempotent_class_vector") {
  const auto model = JordanSumModel::from_field(three_size_field());
  CHECK(counts_at(idempotent_class_vector(model, ExactMatrix::identity(14))) == std::vector<std::uint64_t>{2, 3, 2});
  CHECK(counts_at(idempotent_class_vector(model, ExactMatrix(14, 14))) == std::vector<std::uint64_t>{0, 0, 0});
  // Copies 0-1 are J_3, 2-4 are J_2, 5-6 are J_1.
  CHECK(counts_at(idempotent_class_vector(model, copy_projection(model, 0))) == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(counts_at(idempotent_class_vector(model, copy_projection(model, 2))) == std::vector<std::uint64_t>{0, 1, 0});
  CHECK_THROWS_AS(idempotent_class_vector(model, ExactMatrix::identity(14) * gr(3)), ResidualError);
}

TEST_CASE("class vectors are similarity invariant and additive") {
  gen::Rng rng(52);
  for (int m = 0; m < 3; ++m) {
    const auto model = gen::random_model(rng, 9, 2);
    const auto basis = structured_commutant_basis(model);
    for (int trial = 0; trial < 10; ++trial) {
      ExactMatrix e;
      const ExactMatrix p = gen::random_idempotent(rng, model, basis, &e);
      REQUIRE(idempotent_class_vector(model, p) == idempotent_class_vector(model, e));
    }
    const ExactMatrix y = gen::random_commutant_invertible(rng, model, basis);
    const ExactMatrix yi = inverse(y);
    ExactMatrix sum(model.dimension(), model.dimension());
    std::vector<std::uint64_t> total;
    for (std::size_t c = 0; c < model.copies().size(); ++c) {
      const ExactMatrix piece = y * copy_projection(model, c) * yi;
      sum += piece;
      const auto before = idempotent_class_vector(model, sum - piece);
      const auto after = idempotent_class_vector(model, sum);
      const auto alone = idempotent_class_vector(model, piece);
      for (std::size_t v = 0; v < after.size(); ++v) {
        for (std::size_t i = 0; i < after[v].coordinates.size(); ++i) {
          REQUIRE(after[v].coordinates[i].second ==
                  before[v].coordinates[i].second + alone[v].coordinates[i].second);
        }
      }
    }
  }
}

TEST_CASE("find_idempotent_similarity") {
  const auto model = JordanSumModel::from_field(three_size_field());
  const auto basis = structured_commutant_basis(model);
  gen::Rng rng(53);

  const ExactMatrix e = copy_projection(model, 0) + copy_projection(model, 2);
  const ExactMatrix f = copy_projection(model, 1) + copy_projection(model, 4);
  const ExactMatrix y = gen::random_commutant_invertible(rng, model, basis);
  const ExactMatrix q = y * f * inverse(y);
  const auto sim = find_idempotent_similarity(model, e, q);
  REQUIRE(sim.x.has_value());
  CHECK(sim.obstructions.empty());
  CHECK(*sim.x * e * *sim.x_inverse == q);
  CHECK(commutator(model.matrix(), *sim.x).is_zero());

  const ExactMatrix g = copy_projection(model, 0) + copy_projection(model, 5);
  const auto none = find_idempotent_similarity(model, e, g);
  CHECK_FALSE(none.x.has_value());
  REQUIRE(none.obstructions.size() == 2);
  CHECK(none.obstructions[0].block_size == 2);
  CHECK(none.obstructions[0].trace_p == 2);
  CHECK(none.obstructions[0].trace_q == 0);
  CHECK(none.obstructions[1].block_size == 1);
  CHECK(none.obstructions[1].trace_p == 0);
  CHECK(none.obstructions[1].trace_q == 1);
}

TEST_CASE("decide_uniqueness") {
  const auto finite = decide_uniqueness(field_of({jordan_cell("x", 3, gr(1), 4)}));
  CHECK(finite.unique);
  CHECK(finite.witnesses.empty());

  const auto inf = decide_uniqueness(field_of({continuous_cell("x", 2, gr(0), {{{1, 2}, gr(1)}})}));
  CHECK_FALSE(inf.unique);
  REQUIRE(inf.witnesses.size() == 1);
  CHECK(inf.witnesses[0].block_size == 2);
  CHECK(inf.witnesses[0].multiplicity.is_infinite());
  CHECK(inf.narrative.find("F1") != std::string::npos);
  CHECK(inf.narrative.find("F2") != std::string::npos);

  const auto normal_inf = decide_uniqueness(field_of({continuous_cell("x", 1, gr(2)), cell("y", 1, gr(3), {}, 5)}));
  CHECK_FALSE(normal_inf.unique);
  CHECK(normal_inf.normal_operator);
  CHECK(normal_inf.narrative.find("I (x) N") != std::string::npos);

  const auto normal_fin = decide_uniqueness(field_of({cell("x", 1, gr(2), {}, 3), cell("y", 1, gr(3))}));
  CHECK(normal_fin.unique);
  CHECK(normal_fin.normal_operator);

  CHECK_THROWS_AS(decide_uniqueness(field_of({cell("x", 2, gr(0))})), PreconditionError);
}

TEST_CASE("verdict depends only on the multiplicity profile") {
  gen::Rng rng(54);
  gen::FieldShape shape;
  shape.continuous_chance = 0.15;
  for (int trial = 0; trial < 50; ++trial) {
    const OperatorField f = perturb_superdiagonals(gen::random_field(rng, shape), 1).perturbed;
    const bool unique = decide_uniqueness(f).unique;
    REQUIRE(unique == !multiplicity_profile(f).has_infinite());
    REQUIRE(decide_uniqueness(perturb_superdiagonals(f, 7).perturbed).unique == unique);
    REQUIRE(decide_uniqueness(canonical_form(f)).unique == unique);
  }
}
