#include "sidec/canonical_reduction.hpp"

#include "sidec/linalg.hpp"
#include "sidec/strong_irreducibility.hpp"

namespace sidec {

namespace {

Rational threshold(unsigned k, std::size_t n) { return Rational(1, 2 * static_cast<unsigned long>(k) * n); }

std::string pos(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

PerturbationCertificate perturb_superdiagonals(const OperatorField& field, unsigned k, const Limits& limits) {
  if (k < 1) throw PreconditionError("perturbation index k must be at least 1");
  if (k > limits.max_k) throw PreconditionError("k = " + std::to_string(k) + " exceeds the configured cap");
  require_valid(field, limits);

  PerturbationCertificate cert;
  cert.k = k;
  cert.original = field;
  cert.perturbed = field;
  for (auto& cell : cert.perturbed.cells) {
    const std::size_t n = cell.block_size;
    if (n < 2) continue;
    const Rational t = threshold(k, n);
    const Rational t2 = t * t;
    for (std::size_t i = 1; i < n; ++i) {
      const GaussianRational e = cell.entry(i, i + 1);
      if (e.modulus_squared() < t2) cell.upper_entries[{i, i + 1}] = GaussianRational(t);
    }
  }
  cert.norm = entry_supnorm_bound(cert.original, cert.perturbed, limits);
  cert.bound = cert.norm.bound;
  if (!check_perturbation(cert)) {
    throw InternalError("perturbation certificate for k = " + std::to_string(k) + " failed its own check");
  }
  return cert;
}

bool check_perturbation(const PerturbationCertificate& cert) {
  if (!(cert.bound < Rational(1, cert.k))) return false;
  if (cert.bound != cert.norm.bound) return false;
  for (const auto& cell : cert.perturbed.cells) {
    const SpectralCell* orig = cert.original.find(cell.id);
    if (orig == nullptr || orig->block_size != cell.block_size) return false;
    if (orig->spectral_value != cell.spectral_value) return false;
    const std::size_t n = cell.block_size;
    if (n < 2) continue;
    const Rational t = threshold(cert.k, n);
    const Rational t2 = t * t;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        const GaussianRational before = orig->entry(i, j);
        const GaussianRational after = cell.entry(i, j);
        if (j != i + 1 || before.modulus_squared() >= t2) {
          if (before != after) return false;
        }
        if (j == i + 1 && after.modulus_squared() < t2) return false;
      }
    }
  }
  return true;
}

bool is_canonical(const OperatorField& field) {
  for (const auto& cell : field.cells) {
    for (std::size_t i = 1; i <= cell.block_size; ++i) {
      for (std::size_t j = i + 1; j <= cell.block_size; ++j) {
        const GaussianRational e = cell.entry(i, j);
        if (j == i + 1 ? e != GaussianRational(1) : !e.is_zero()) return false;
      }
    }
  }
  return true;
}

OperatorField canonical_form(const OperatorField& field) {
  OperatorField out = field;
  for (auto& cell : out.cells) {
    cell.upper_entries.clear();
    for (std::size_t i = 1; i < cell.block_size; ++i) cell.upper_entries[{i, i + 1}] = GaussianRational(1);
  }
  return out;
}

SimilarityCertificate build_similarity(const OperatorField& field) {
  require_valid(field);
  for (const auto& cell : field.cells) {
    for (std::size_t i = 1; i < cell.block_size; ++i) {
      if (cell.entry(i, i + 1).is_zero()) {
        throw PreconditionError("cell \"" + cell.id + "\": superdiagonal entry " + pos(i, i + 1) +
                                " is zero; perturb the field first");
      }
    }
  }

  SimilarityCertificate cert;
  cert.source = field;
  cert.target = canonical_form(field);
  for (const auto& cell : field.cells) {
    const std::size_t n = cell.block_size;
    ExactMatrix strict = fiber_matrix(cell);
    for (std::size_t i = 0; i < n; ++i) strict(i, i) = 0;

    GaussianRational product(1);
    for (std::size_t i = 1; i < n; ++i) product *= cell.entry(i, i + 1);

    ExactMatrix row(1, n);
    row(0, 0) = GaussianRational(1) / product;
    ExactMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set_block(i, 0, row);
      row = row * strict;
    }
    cert.cells.push_back({cell.id, x, inverse(x)});
  }
  if (!check_similarity(cert)) throw InternalError("similarity certificate failed its own check");
  return cert;
}

bool check_similarity(const SimilarityCertificate& cert) {
  if (cert.cells.size() != cert.source.cells.size()) return false;
  for (const auto& cs : cert.cells) {
    const SpectralCell* src = cert.source.find(cs.cell_id);
    const SpectralCell* dst = cert.target.find(cs.cell_id);
    if (src == nullptr || dst == nullptr) return false;
    const ExactMatrix a = fiber_matrix(*src);
    const ExactMatrix j = fiber_matrix(*dst);
    const ExactMatrix id = ExactMatrix::identity(a.rows());
    if (cs.x * cs.x_inverse != id || cs.x_inverse * cs.x != id) return false;
    if (cs.x * a != j * cs.x) return false;
  }
  return true;
}

CanonicalReduction reduce_field_to_canonical(const OperatorField& field) {
  CanonicalReduction r;
  r.certificate = build_similarity(field);
  r.canonical = r.certificate.target;
  return r;
}

std::vector<SequenceStep> approximation_sequence(const OperatorField& field, unsigned k_max, const Limits& limits) {
  require_valid(field, limits);
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  if (k_max > limits.max_k) throw PreconditionError("k_max exceeds the configured cap");
  const MultiplicityProfile profile = multiplicity_profile(field);
  for (const auto& e : profile.entries) {
    if (e.multiplicity.is_infinite()) {
      throw PreconditionError("approximation sequence needs a simple and bounded multiplicity function; block size " +
                              std::to_string(e.block_size) + " has infinite multiplicity at " +
                              e.spectral_value.to_string());
    }
  }
  std::vector<SequenceStep> steps;
  steps.reserve(k_max);
  for (unsigned k = 1; k <= k_max; ++k) {
    SequenceStep step;
    step.k = k;
    step.certificate = perturb_superdiagonals(field, k, limits);
    step.simple_multiplicity = true;
    step.superdiagonals_invertible = field_si_check(step.certificate.perturbed).superdiagonals_invertible;
    steps.push_back(std::move(step));
  }
  return steps;
}

bool bounds_strictly_decreasing(const std::vector<SequenceStep>& steps) {
  for (std::size_t s = 1; s < steps.size(); ++s) {
    const Rational& prev = steps[s - 1].certificate.bound;
    const Rational& cur = steps[s].certificate.bound;
    if (sgn(prev) == 0 ? sgn(cur) != 0 : !(cur < prev)) return false;
  }
  return true;
}

}  // namespace sidec
