#include "sidec/commutant.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sidec/canonical_reduction.hpp"
#include "sidec/linalg.hpp"

namespace sidec {

// ---------------------------------------------------------------------------
// Model

JordanSumModel::JordanSumModel(std::vector<Summand> summands, const Limits& limits) : summands_(std::move(summands)) {
  if (summands_.empty()) throw PreconditionError("a Jordan model needs at least one summand");
  std::stable_sort(summands_.begin(), summands_.end(), [](const Summand& a, const Summand& b) {
    if (a.spectral_value != b.spectral_value) return a.spectral_value < b.spectral_value;
    return a.block_size > b.block_size;
  });
  std::set<std::pair<GaussianRational, std::size_t>> seen;
  for (const auto& s : summands_) {
    if (s.block_size < 1) throw PreconditionError("block size must be at least 1");
    if (s.multiplicity < 1) throw PreconditionError("multiplicity must be at least 1");
    if (!seen.insert({s.spectral_value, s.block_size}).second) {
      throw PreconditionError("duplicate summand J_" + std::to_string(s.block_size) + "(" +
                              s.spectral_value.to_string() + ")");
    }
    dimension_ += s.block_size * s.multiplicity;
  }
  if (dimension_ > limits.max_dimension) {
    throw DimensionError("model dimension " + std::to_string(dimension_) + " exceeds the configured cap " +
                         std::to_string(limits.max_dimension));
  }

  matrix_ = ExactMatrix(dimension_, dimension_);
  std::size_t offset = 0;
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    summand_offsets_.push_back(offset);
    first_copy_.push_back(copies_.size());
    const Summand& sm = summands_[s];
    const ExactMatrix block = jordan_block(sm.block_size, sm.spectral_value);
    for (std::size_t c = 0; c < sm.multiplicity; ++c) {
      copies_.push_back({s, c, offset, sm.block_size});
      matrix_.set_block(offset, offset, block);
      offset += sm.block_size;
    }
  }
}

JordanSumModel JordanSumModel::from_field(const OperatorField& canonical, const Limits& limits) {
  require_valid(canonical, limits);
  if (!is_canonical(canonical)) throw PreconditionError("commutant models need a canonical field; reduce first");
  std::map<std::pair<GaussianRational, std::size_t>, Summand> groups;
  for (const auto& cell : canonical.cells) {
    const auto* atomic = std::get_if<AtomicMass>(&cell.mass);
    if (atomic == nullptr) {
      throw PreconditionError("cell \"" + cell.id +
                              "\" has infinite multiplicity and cannot be materialized as a finite matrix");
    }
    Summand& s = groups[{cell.spectral_value, cell.block_size}];
    if (s.cell_ids.empty()) {
      s.block_size = cell.block_size;
      s.spectral_value = cell.spectral_value;
      s.multiplicity = 0;
    }
    s.multiplicity += atomic->count;
    s.cell_ids.push_back(cell.id);
  }
  std::vector<Summand> summands;
  for (auto& [key, s] : groups) {
    std::sort(s.cell_ids.begin(), s.cell_ids.end());
    summands.push_back(std::move(s));
  }
  return JordanSumModel(std::move(summands), limits);
}

std::vector<GaussianRational> JordanSumModel::spectral_values() const {
  std::vector<GaussianRational> values;
  for (const auto& s : summands_) {
    if (values.empty() || values.back() != s.spectral_value) values.push_back(s.spectral_value);
  }
  return values;
}

// ---------------------------------------------------------------------------
// Commutant bases

std::vector<ExactMatrix> sylvester_kernel(const ExactMatrix& a, const ExactMatrix& b, const Limits& limits) {
  if (!a.is_square() || !b.is_square()) throw DimensionError("sylvester_kernel needs square matrices");
  const std::size_t p = a.rows();
  const std::size_t q = b.rows();
  if (p > limits.max_dimension || q > limits.max_dimension) {
    throw DimensionError("sylvester_kernel input exceeds the configured cap");
  }
  // Unknown X(i, j) sits at column i*q + j; row (i, j) encodes (AX − XB)(i, j).
  ExactMatrix system(p * q, p * q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const std::size_t row = i * q + j;
      for (std::size_t k = 0; k < p; ++k) {
        if (!a(i, k).is_zero()) system(row, k * q + j) += a(i, k);
      }
      for (std::size_t k = 0; k < q; ++k) {
        if (!b(k, j).is_zero()) system(row, i * q + k) -= b(k, j);
      }
    }
  }
  std::vector<ExactMatrix> out;
  for (const auto& v : kernel_basis(system)) {
    ExactMatrix x(p, q);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) x(i, j) = v(i * q + j, 0);
    }
    out.push_back(std::move(x));
  }
  return out;
}

CommutantBasis structured_commutant_basis(const JordanSumModel& model) {
  CommutantBasis out;
  const auto& copies = model.copies();
  const auto& summands = model.summands();
  const std::size_t dim = model.dimension();
  for (std::size_t r = 0; r < copies.size(); ++r) {
    for (std::size_t c = 0; c < copies.size(); ++c) {
      const JordanCopy& rc = copies[r];
      const JordanCopy& cc = copies[c];
      if (summands[rc.summand].spectral_value != summands[cc.summand].spectral_value) continue;
      const std::size_t m = std::min(rc.size, cc.size);
      const std::size_t col_shift = cc.size - m;  // right-hand columns when the column copy is larger
      for (std::size_t t = 0; t < m; ++t) {
        ExactMatrix b(dim, dim);
        b.set_block(rc.offset, cc.offset + col_shift, shift_power(m, t));
        out.basis.push_back(std::move(b));
        out.tags.push_back({r, c, t});
      }
    }
  }
  const ExactMatrix& a = model.matrix();
  for (const auto& b : out.basis) {
    if (a * b != b * a) throw InternalError("structured commutant element does not commute with the model");
  }
  return out;
}

std::size_t commutant_dimension_formula(const JordanSumModel& model) {
  std::size_t total = 0;
  for (const auto& si : model.summands()) {
    for (const auto& sj : model.summands()) {
      if (si.spectral_value != sj.spectral_value) continue;
      total += si.multiplicity * sj.multiplicity * std::min(si.block_size, sj.block_size);
    }
  }
  return total;
}

OracleComparison compare_with_oracle(const JordanSumModel& model, const CommutantBasis& basis) {
  OracleComparison cmp;
  cmp.structured_dimension = rank(stack_vectorized(basis.basis));
  const auto oracle = sylvester_kernel(model.matrix(), model.matrix());
  cmp.oracle_dimension = oracle.size();
  if (cmp.structured_dimension == cmp.oracle_dimension && cmp.structured_dimension == basis.basis.size()) {
    std::vector<ExactMatrix> both = basis.basis;
    both.insert(both.end(), oracle.begin(), oracle.end());
    cmp.spans_equal = rank(stack_vectorized(both)) == cmp.oracle_dimension;
  }
  return cmp;
}

ExactMatrix commutant_element(const CommutantBasis& basis, std::span<const GaussianRational> coefficients) {
  if (basis.basis.empty()) throw PreconditionError("empty commutant basis");
  if (coefficients.size() != basis.basis.size()) throw DimensionError("coefficient count differs from basis size");
  ExactMatrix x(basis.basis.front().rows(), basis.basis.front().cols());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (!coefficients[k].is_zero()) x += basis.basis[k] * coefficients[k];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Idempotents

void require_idempotent(const ExactMatrix& p) {
  if (!p.is_square()) throw DimensionError("idempotent must be square");
  ExactMatrix residual = p * p - p;
  if (!residual.is_zero()) throw ResidualError("matrix is not idempotent (P^2 - P != 0)", std::move(residual));
}

void require_in_commutant(const JordanSumModel& model, const ExactMatrix& p) {
  if (p.rows() != model.dimension() || p.cols() != model.dimension()) {
    throw DimensionError("matrix size " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                         " does not match model dimension " + std::to_string(model.dimension()));
  }
  ExactMatrix residual = commutator(model.matrix(), p);
  if (!residual.is_zero()) throw ResidualError("matrix is not in the commutant (AP - PA != 0)", std::move(residual));
}

void require_commuting_family(const JordanSumModel& model, const IdempotentFamily& family) {
  for (const auto& p : family.members) {
    require_in_commutant(model, p);
    require_idempotent(p);
  }
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    for (std::size_t j = i + 1; j < family.members.size(); ++j) {
      ExactMatrix residual = commutator(family.members[i], family.members[j]);
      if (!residual.is_zero()) {
        throw ResidualError("family not commuting: members " + std::to_string(i) + " and " + std::to_string(j),
                            std::move(residual));
      }
    }
  }
}

ExactMatrix copy_projection(const JordanSumModel& model, std::size_t copy) {
  const JordanCopy& c = model.copies().at(copy);
  ExactMatrix p(model.dimension(), model.dimension());
  for (std::size_t i = 0; i < c.size; ++i) p(c.offset + i, c.offset + i) = 1;
  return p;
}

IdempotentFamily canonical_family(const JordanSumModel& model) {
  IdempotentFamily f;
  for (std::size_t c = 0; c < model.copies().size(); ++c) f.members.push_back(copy_projection(model, c));
  return f;
}

ExactMatrix copy_swap(const JordanSumModel& model, std::size_t copy_a, std::size_t copy_b) {
  const JordanCopy& a = model.copies().at(copy_a);
  const JordanCopy& b = model.copies().at(copy_b);
  if (a.summand != b.summand) throw PreconditionError("can only exchange copies of the same summand");
  ExactMatrix p = ExactMatrix::identity(model.dimension());
  if (copy_a == copy_b) return p;
  for (std::size_t i = 0; i < a.size; ++i) {
    p(a.offset + i, a.offset + i) = 0;
    p(b.offset + i, b.offset + i) = 0;
    p(a.offset + i, b.offset + i) = 1;
    p(b.offset + i, a.offset + i) = 1;
  }
  return p;
}

namespace {

struct LocalDiagonalization {
  ExactMatrix g;
  ExactMatrix g_inverse;
  std::vector<bool> selected;
};

// Conjugates an idempotent n×n matrix E to a 0/1 diagonal. When E already
// carries a 0/1 diagonal D and G = DE + (I−D)(I−E) is invertible that G is
// used, so the diagonal is kept; otherwise G is the inverse of a basis
// adapted to ran E ⊕ ker E.
LocalDiagonalization diagonalize_local(const ExactMatrix& e) {
  const std::size_t n = e.rows();
  const ExactMatrix id = ExactMatrix::identity(n);
  bool zero_one = true;
  for (std::size_t i = 0; i < n && zero_one; ++i) {
    zero_one = e(i, i).is_zero() || e(i, i) == GaussianRational(1);
  }
  if (zero_one) {
    ExactMatrix d(n, n);
    std::vector<bool> selected(n);
    for (std::size_t i = 0; i < n; ++i) {
      selected[i] = !e(i, i).is_zero();
      if (selected[i]) d(i, i) = 1;
    }
    ExactMatrix g = d * e + (id - d) * (id - e);
    if (rank(g) == n) {
      ExactMatrix g_inv = inverse(g);
      return {std::move(g), std::move(g_inv), std::move(selected)};
    }
  }
  std::vector<ExactMatrix> range = kernel_basis(e - id);
  std::vector<ExactMatrix> kernel = kernel_basis(e);
  ExactMatrix frame(n, n);
  std::vector<bool> selected(n, false);
  std::size_t col = 0;
  for (const auto& v : range) {
    frame.set_block(0, col, v);
    selected[col++] = true;
  }
  for (const auto& v : kernel) frame.set_block(0, col++, v);
  return {inverse(frame), frame, std::move(selected)};
}

// Lifts per-summand scalar matrices G_s (n_s × n_s) to G_s ⊗ I_{m_s}.
ExactMatrix lift_scalar_blocks(const JordanSumModel& model, const std::vector<ExactMatrix>& per_summand) {
  ExactMatrix out(model.dimension(), model.dimension());
  for (std::size_t s = 0; s < model.summands().size(); ++s) {
    const Summand& sm = model.summands()[s];
    const std::size_t base = model.summand_offset(s);
    const ExactMatrix& g = per_summand[s];
    for (std::size_t a = 0; a < sm.multiplicity; ++a) {
      for (std::size_t b = 0; b < sm.multiplicity; ++b) {
        const GaussianRational& v = g(a, b);
        if (v.is_zero()) continue;
        for (std::size_t t = 0; t < sm.block_size; ++t) {
          out(base + a * sm.block_size + t, base + b * sm.block_size + t) = v;
        }
      }
    }
  }
  return out;
}

}  // namespace

IdempotentDiagonalization diagonalize_idempotent(const JordanSumModel& model, const ExactMatrix& p) {
  require_in_commutant(model, p);
  require_idempotent(p);
  const std::size_t dim = model.dimension();
  const ExactMatrix id = ExactMatrix::identity(dim);

  // Stage 1: quotient blocks to 0/1 diagonals.
  std::vector<ExactMatrix> g, g_inv;
  std::vector<bool> selected;
  for (std::size_t s = 0; s < model.summands().size(); ++s) {
    const Summand& sm = model.summands()[s];
    const std::size_t base = model.summand_offset(s);
    ExactMatrix e(sm.multiplicity, sm.multiplicity);
    for (std::size_t a = 0; a < sm.multiplicity; ++a) {
      for (std::size_t b = 0; b < sm.multiplicity; ++b) {
        e(a, b) = p(base + a * sm.block_size, base + b * sm.block_size);
      }
    }
    LocalDiagonalization local = diagonalize_local(e);
    g.push_back(std::move(local.g));
    g_inv.push_back(std::move(local.g_inverse));
    selected.insert(selected.end(), local.selected.begin(), local.selected.end());
  }
  const ExactMatrix y1 = lift_scalar_blocks(model, g);
  const ExactMatrix y1_inv = lift_scalar_blocks(model, g_inv);
  const ExactMatrix p1 = y1 * p * y1_inv;

  ExactMatrix d(dim, dim);
  for (std::size_t c = 0; c < model.copies().size(); ++c) {
    if (!selected[c]) continue;
    const JordanCopy& jc = model.copies()[c];
    for (std::size_t t = 0; t < jc.size; ++t) d(jc.offset + t, jc.offset + t) = 1;
  }

  // Stage 2: p1 − d lies in the radical, so x2 = I + nilpotent.
  const ExactMatrix x2 = d * p1 + (id - d) * (id - p1);
  const ExactMatrix x2_inv = inverse(x2);

  IdempotentDiagonalization out{x2 * y1, y1_inv * x2_inv, d, std::move(selected)};
  if (out.x * out.x_inverse != id || out.x * p * out.x_inverse != d || commutator(model.matrix(), out.x).is_zero() == false) {
    throw InternalError("idempotent diagonalization failed its own check");
  }
  return out;
}

std::vector<Rational> summand_ranks(const JordanSumModel& model, const ExactMatrix& q) {
  if (q.rows() != model.dimension() || q.cols() != model.dimension()) {
    throw DimensionError("matrix size does not match the model");
  }
  std::vector<Rational> ranks;
  for (std::size_t s = 0; s < model.summands().size(); ++s) {
    const std::size_t base = model.summand_offset(s);
    GaussianRational tr;
    for (std::size_t i = 0; i < model.summand_dimension(s); ++i) tr += q(base + i, base + i);
    if (!tr.is_real()) throw InternalError("trace of an idempotent block is not real");
    ranks.push_back(tr.real() / model.summands()[s].block_size);
  }
  return ranks;
}

Rational rank_function_rq(const JordanSumModel& model, const ExactMatrix& q) {
  require_idempotent(q);
  require_in_commutant(model, q);
  Rational total = 0;
  for (const auto& r : summand_ranks(model, q)) total += r;
  return total;
}

namespace {

std::size_t first_nonzero_diagonal(const ExactMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m(i, i).is_zero()) return i;
  }
  return m.rows();
}

}  // namespace

std::vector<ExactMatrix> extract_minimal_idempotents(const JordanSumModel& model, const IdempotentFamily& family) {
  require_commuting_family(model, family);
  const std::size_t dim = model.dimension();
  const ExactMatrix id = ExactMatrix::identity(dim);

  std::vector<ExactMatrix> atoms{id};
  for (const auto& p : family.members) {
    std::vector<ExactMatrix> next;
    for (const auto& a : atoms) {
      ExactMatrix in = a * p;
      ExactMatrix out = a - in;
      if (!in.is_zero()) next.push_back(std::move(in));
      if (!out.is_zero()) next.push_back(std::move(out));
    }
    atoms = std::move(next);
  }
  // Drop the atom below I − join (annihilated by every member).
  std::erase_if(atoms, [&family](const ExactMatrix& a) {
    return std::all_of(family.members.begin(), family.members.end(),
                       [&a](const ExactMatrix& p) { return (a * p).is_zero(); });
  });
  std::stable_sort(atoms.begin(), atoms.end(), [](const ExactMatrix& x, const ExactMatrix& y) {
    return first_nonzero_diagonal(x) < first_nonzero_diagonal(y);
  });
  return atoms;
}

bool is_maximal_family(const JordanSumModel& model, const IdempotentFamily& family) {
  const auto atoms = extract_minimal_idempotents(model, family);
  if (atoms.size() != model.copies().size()) return false;
  ExactMatrix sum(model.dimension(), model.dimension());
  for (const auto& a : atoms) {
    if (rank_function_rq(model, a) != 1) return false;
    sum += a;
  }
  return sum == ExactMatrix::identity(model.dimension());
}

namespace {

struct Frame {
  ExactMatrix y;                          // y · C_c · y⁻¹ = atoms[assignment[c]]
  std::vector<std::size_t> assignment;  // copy -> atom index
};

// Builds invertible Y in the commutant sending each copy projection onto a
// minimal idempotent of the same type: Y = Σ_c V_c·C_c with
// V_c·C_c·V_c⁻¹ = E_c.
Frame frame_for(const JordanSumModel& model, const std::vector<ExactMatrix>& atoms) {
  const std::size_t nsum = model.summands().size();
  std::vector<std::vector<std::size_t>> by_type(nsum);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto ranks = summand_ranks(model, atoms[k]);
    std::size_t type = nsum;
    for (std::size_t s = 0; s < nsum; ++s) {
      if (ranks[s] == 1 && type == nsum) {
        type = s;
      } else if (sgn(ranks[s]) != 0) {
        type = nsum + 1;
        break;
      }
    }
    if (type >= nsum) throw PreconditionError("family not maximal: an atom is not a minimal idempotent");
    by_type[type].push_back(k);
  }
  for (std::size_t s = 0; s < nsum; ++s) {
    if (by_type[s].size() != model.summands()[s].multiplicity) {
      throw PreconditionError("family not maximal: wrong number of minimal idempotents of type J_" +
                              std::to_string(model.summands()[s].block_size));
    }
  }

  Frame f{ExactMatrix(model.dimension(), model.dimension()), std::vector<std::size_t>(model.copies().size())};
  for (std::size_t s = 0; s < nsum; ++s) {
    for (std::size_t t = 0; t < by_type[s].size(); ++t) {
      const std::size_t copy = model.first_copy(s) + t;
      const std::size_t atom = by_type[s][t];
      const IdempotentDiagonalization diag = diagonalize_idempotent(model, atoms[atom]);
      const auto it = std::find(diag.selected_copies.begin(), diag.selected_copies.end(), true);
      const auto landed = static_cast<std::size_t>(it - diag.selected_copies.begin());
      const ExactMatrix v = diag.x_inverse * copy_swap(model, copy, landed);
      f.y += v * copy_projection(model, copy);
      f.assignment[copy] = atom;
    }
  }
  return f;
}

}  // namespace

FamilyConjugation conjugate_idempotent_families(const JordanSumModel& model, const IdempotentFamily& p_family,
                                                const IdempotentFamily& q_family) {
  FamilyConjugation out;
  out.p_atoms = extract_minimal_idempotents(model, p_family);
  out.q_atoms = extract_minimal_idempotents(model, q_family);
  const std::size_t copies = model.copies().size();
  if (out.p_atoms.size() != copies || out.q_atoms.size() != copies) {
    throw PreconditionError("family not maximal: expected " + std::to_string(copies) + " minimal idempotents, got " +
                            std::to_string(out.p_atoms.size()) + " and " + std::to_string(out.q_atoms.size()));
  }
  const Frame fp = frame_for(model, out.p_atoms);
  const Frame fq = frame_for(model, out.q_atoms);
  out.x = fp.y * inverse(fq.y);
  out.x_inverse = inverse(out.x);
  out.match.assign(copies, 0);
  for (std::size_t c = 0; c < copies; ++c) out.match[fq.assignment[c]] = fp.assignment[c];

  // Every claim is re-checked; a failure here would contradict uniqueness
  // for finite multiplicity.
  if (!commutator(model.matrix(), out.x).is_zero()) throw InternalError("family conjugator is not in the commutant");
  for (std::size_t i = 0; i < copies; ++i) {
    if (out.x * out.q_atoms[i] != out.p_atoms[out.match[i]] * out.x) {
      throw InternalError("family conjugator does not map minimal idempotents onto each other");
    }
  }
  for (const auto& q : q_family.members) {
    const ExactMatrix image = out.x * q * out.x_inverse;
    ExactMatrix rebuilt(model.dimension(), model.dimension());
    for (const auto& a : out.p_atoms) {
      if (a * image * a == a) rebuilt += a;
    }
    if (rebuilt != image) throw InternalError("conjugated member is not in the target lattice");
  }
  return out;
}

}  // namespace sidec
