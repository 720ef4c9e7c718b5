#include "sidec/k_invariants.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sidec/canonical_reduction.hpp"
#include "sidec/linalg.hpp"
#include "sidec/strong_irreducibility.hpp"

namespace sidec {

std::vector<std::uint64_t> RankVector::counts() const {
  std::vector<std::uint64_t> out;
  for (const auto& [size, n] : coordinates) out.push_back(n);
  return out;
}

namespace {

void require_canonical(const OperatorField& field) {
  require_valid(field);
  if (!is_canonical(field)) throw PreconditionError("K-theoretic invariants need a canonical field; reduce first");
}

}  // namespace

std::vector<std::pair<GaussianRational, std::size_t>> compute_rank_function_ra(const OperatorField& canonical) {
  require_canonical(canonical);
  std::map<GaussianRational, std::set<std::size_t>> sizes;
  for (const auto& cell : canonical.cells) sizes[cell.spectral_value].insert(cell.block_size);
  std::vector<std::pair<GaussianRational, std::size_t>> out;
  for (const auto& [z, s] : sizes) out.emplace_back(z, s.size());
  return out;
}

K0Descriptor compute_v_k0(const OperatorField& canonical) {
  require_canonical(canonical);
  const MultiplicityProfile profile = multiplicity_profile(canonical);
  std::map<GaussianRational, std::vector<const ProfileEntry*>> by_value;
  for (const auto& e : profile.entries) by_value[e.spectral_value].push_back(&e);

  K0Descriptor out;
  for (auto& [z, entries] : by_value) {
    std::sort(entries.begin(), entries.end(),
              [](const ProfileEntry* a, const ProfileEntry* b) { return a->block_size > b->block_size; });
    ValueDescriptor v;
    v.spectral_value = z;
    v.rank = entries.size();
    v.identity_class.spectral_value = z;
    for (const ProfileEntry* e : entries) {
      v.block_sizes.push_back(e->block_size);
      if (e->multiplicity.is_infinite()) {
        v.vanishing_block_sizes.push_back(e->block_size);
        v.identity_class.coordinates.emplace_back(e->block_size, 0);
        v.unique = false;
      } else {
        v.identity_class.coordinates.emplace_back(e->block_size, e->multiplicity.value());
      }
    }
    out.values.push_back(std::move(v));
  }
  return out;
}

std::vector<RankVector> idempotent_class_vector(const JordanSumModel& model, const ExactMatrix& q) {
  require_idempotent(q);
  require_in_commutant(model, q);
  const std::vector<Rational> ranks = summand_ranks(model, q);
  std::vector<RankVector> out;
  for (std::size_t s = 0; s < model.summands().size(); ++s) {
    const Summand& sm = model.summands()[s];
    if (out.empty() || out.back().spectral_value != sm.spectral_value) out.push_back({sm.spectral_value, {}});
    if (ranks[s].get_den() != 1 || sgn(ranks[s]) < 0) {
      throw InternalError("class coordinate of an idempotent is not a nonnegative integer");
    }
    out.back().coordinates.emplace_back(sm.block_size, ranks[s].get_num().get_ui());
  }
  return out;
}

IdempotentSimilarity find_idempotent_similarity(const JordanSumModel& model, const ExactMatrix& p,
                                                const ExactMatrix& q) {
  IdempotentSimilarity out;
  const auto rp = summand_ranks(model, p);
  const auto rq = summand_ranks(model, q);
  // Validates both idempotents as a side effect.
  idempotent_class_vector(model, p);
  idempotent_class_vector(model, q);
  for (std::size_t s = 0; s < rp.size(); ++s) {
    if (rp[s] != rq[s]) {
      const Summand& sm = model.summands()[s];
      out.obstructions.push_back({sm.spectral_value, sm.block_size, rp[s] * sm.block_size, rq[s] * sm.block_size});
    }
  }
  if (!out.obstructions.empty()) return out;

  const IdempotentDiagonalization dp = diagonalize_idempotent(model, p);
  const IdempotentDiagonalization dq = diagonalize_idempotent(model, q);
  // Per summand, carry the copies selected for P onto those selected for Q.
  ExactMatrix perm(model.dimension(), model.dimension());
  for (std::size_t s = 0; s < model.summands().size(); ++s) {
    std::vector<std::size_t> from, to, from_rest, to_rest;
    const std::size_t first = model.first_copy(s);
    for (std::size_t c = first; c < first + model.summands()[s].multiplicity; ++c) {
      (dp.selected_copies[c] ? from : from_rest).push_back(c);
      (dq.selected_copies[c] ? to : to_rest).push_back(c);
    }
    from.insert(from.end(), from_rest.begin(), from_rest.end());
    to.insert(to.end(), to_rest.begin(), to_rest.end());
    for (std::size_t k = 0; k < from.size(); ++k) {
      const JordanCopy& a = model.copies()[from[k]];
      const JordanCopy& b = model.copies()[to[k]];
      for (std::size_t t = 0; t < a.size; ++t) perm(b.offset + t, a.offset + t) = 1;
    }
  }
  ExactMatrix x = dq.x_inverse * perm * dp.x;
  ExactMatrix x_inv = inverse(x);
  if (x * p * x_inv != q || !commutator(model.matrix(), x).is_zero()) {
    throw InternalError("idempotent similarity failed its own check");
  }
  out.x = std::move(x);
  out.x_inverse = std::move(x_inv);
  return out;
}

UniquenessVerdict decide_uniqueness(const OperatorField& field) {
  require_valid(field);
  const FieldSiReport si = field_si_check(field);
  if (!si.superdiagonals_invertible) {
    throw PreconditionError(
        "some superdiagonal entry vanishes on a cell, so the superdiagonal multiplication operators are not "
        "invertible; perturb the field first (perturb --k K or analyze --perturb K)");
  }
  UniquenessVerdict v;
  v.normal_operator = std::all_of(field.cells.begin(), field.cells.end(),
                                  [](const SpectralCell& c) { return c.block_size == 1; });
  for (const auto& e : multiplicity_profile(field).entries) {
    if (e.multiplicity.is_infinite()) v.witnesses.push_back({e.spectral_value, e.block_size, e.multiplicity});
  }
  v.unique = v.witnesses.empty();
  if (v.unique) {
    v.narrative = v.normal_operator
                      ? "normal operator with finite multiplicity everywhere: the strongly irreducible "
                        "decomposition is unique up to similarity"
                      : "every multiplicity is finite: any two maximal abelian sets of idempotents in the "
                        "commutant are conjugate by an invertible element of the commutant";
    return v;
  }
  std::string where;
  for (const auto& w : v.witnesses) {
    if (!where.empty()) where += ", ";
    where += "J_" + std::to_string(w.block_size) + " at " + w.spectral_value.to_string();
  }
  v.narrative =
      "not unique up to similarity: infinite multiplicity at " + where +
      ". Writing the diagonal part as N (x) I on L^2(nu) (x) l^2, two maximal abelian sets of idempotents in the "
      "commutant are F1, generated by spectral projections of N tensored with the coordinate projections of l^2, "
      "and F2, generated by spectral projections of N tensored with the projections of multiplication by "
      "characteristic functions on L^2[0,1] transported to l^2. F1 contains an idempotent whose fiber has rank "
      "equal to the block size almost everywhere, while every nonzero member of F2 has infinite fiber rank, so no "
      "invertible element of the commutant conjugates one onto the other.";
  if (v.normal_operator) {
    v.narrative += " For a normal operator this is the case I (x) N with an infinite-dimensional first factor.";
  }
  return v;
}

}  // namespace sidec
