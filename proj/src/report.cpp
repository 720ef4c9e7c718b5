#include "sidec/report.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "sidec/errors.hpp"
#include "sidec/field_io.hpp"
#include "sidec/family_io.hpp"

namespace sidec {

namespace {

// Runs one stage, appending its wall time.
void timed(AnalysisReport& r, const std::string& stage, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  r.timings.push_back({stage, elapsed.count()});
}

StageStatus skipped(std::string note) { return {false, std::move(note)}; }

}  // namespace

AnalysisReport run_analysis(const OperatorField& field, const AnalysisOptions& options) {
  AnalysisReport r;
  r.input = field;
  timed(r, "validate", [&] { r.validation = validate_field(field, options.limits); });
  if (!r.validation.valid) {
    const std::string why = "field is invalid";
    r.profile_status = r.si_status = r.sequence_status = skipped(why);
    r.reduction_status = r.commutant_status = r.invariants_status = r.verdict_status = skipped(why);
    return r;
  }
  timed(r, "profile", [&] { r.profile = multiplicity_profile(field); });
  r.profile_status.ran = true;
  timed(r, "strong_irreducibility", [&] { r.si = field_si_check(field); });
  r.si_status.ran = true;

  r.analyzed = field;
  if (options.perturb_k) {
    timed(r, "perturb", [&] { r.perturbation = perturb_superdiagonals(field, *options.perturb_k, options.limits); });
    r.analyzed = r.perturbation->perturbed;
    r.analyzed_is_perturbed = true;
  }
  r.analyzed_si = r.analyzed_is_perturbed ? field_si_check(r.analyzed) : r.si;

  if (options.sequence_k_max) {
    r.sequence_k_max = options.sequence_k_max;
    if (r.profile.has_infinite()) {
      r.sequence_status = skipped("the multiplicity function is unbounded (a continuous cell carries infinite "
                                  "multiplicity), so the approximating sequence is not defined");
    } else {
      timed(r, "sequence", [&] { r.sequence = approximation_sequence(field, *options.sequence_k_max, options.limits); });
      r.sequence_status.ran = true;
    }
  } else {
    r.sequence_status = skipped("not requested (use --sequence K_MAX)");
  }

  if (!r.analyzed_si.superdiagonals_invertible) {
    const std::string why = "superdiagonal entries vanish on cells " + [&] {
      std::string s;
      for (const auto& c : r.analyzed_si.failing_cells) s += (s.empty() ? "" : ", ") + c;
      return s;
    }() + "; rerun with --perturb K to move to a nearby field with invertible superdiagonals";
    r.reduction_status = r.commutant_status = r.invariants_status = r.verdict_status = skipped(why);
    return r;
  }

  timed(r, "reduce", [&] { r.reduction = reduce_field_to_canonical(r.analyzed); });
  r.reduction_status.ran = true;
  const OperatorField& canonical = r.reduction->canonical;

  const bool continuous = std::any_of(canonical.cells.begin(), canonical.cells.end(),
                                      [](const SpectralCell& c) { return is_continuous(c.mass); });
  if (continuous) {
    r.commutant_status = skipped("infinite multiplicity cannot be materialized as a finite matrix");
  } else {
    try {
      timed(r, "commutant", [&] {
        JordanSumModel model = JordanSumModel::from_field(canonical, options.limits);
        CommutantBasis basis = structured_commutant_basis(model);
        std::optional<OracleComparison> oracle;
        if (model.dimension() <= options.oracle_max_dimension) oracle = compare_with_oracle(model, basis);
        const std::size_t formula = commutant_dimension_formula(model);
        r.commutant = CommutantSummary{std::move(model), std::move(basis), formula, oracle};
      });
      r.commutant_status.ran = true;
      if (!r.commutant->oracle) {
        r.commutant_status.note = "oracle skipped above dimension " + std::to_string(options.oracle_max_dimension);
      }
    } catch (const DimensionError& e) {
      r.commutant_status = skipped(e.what());
    }
  }

  timed(r, "invariants", [&] { r.k0 = compute_v_k0(canonical); });
  r.invariants_status.ran = true;
  timed(r, "verdict", [&] { r.verdict = decide_uniqueness(r.analyzed); });
  r.verdict_status.ran = true;
  return r;
}

int verdict_exit_code(const AnalysisReport& report) {
  return report.verdict && !report.verdict->unique ? 2 : 0;
}

Json validation_to_json(const ValidationReport& v) {
  Json j = Json::object();
  j["valid"] = v.valid;
  j["errors"] = v.errors;
  Json simple = Json::object();
  for (const auto& [n, s] : v.simple_multiplicity) simple[std::to_string(n)] = s;
  j["simple_multiplicity"] = std::move(simple);
  return j;
}

Json profile_to_json(const MultiplicityProfile& p) {
  Json a = Json::array();
  for (const auto& e : p.entries) {
    Json j = Json::object();
    j["block_size"] = e.block_size;
    j["value"] = to_json(e.spectral_value);
    j["multiplicity"] = e.multiplicity.to_string();
    j["total_weight"] = to_string(e.total_weight);
    a.push_back(std::move(j));
  }
  return a;
}

Json si_to_json(const FieldSiReport& si) {
  Json cells = Json::array();
  for (const auto& c : si.cells) {
    Json j = Json::object();
    j["id"] = c.cell_id;
    j["block_size"] = c.block_size;
    j["strongly_irreducible"] = c.verdict.strongly_irreducible;
    j["reason"] = c.verdict.reason;
    cells.push_back(std::move(j));
  }
  Json j = Json::object();
  j["cells"] = std::move(cells);
  j["failing_cells"] = si.failing_cells;
  j["invertible_superdiagonals"] = si.superdiagonals_invertible;
  j["vacuous"] = si.vacuous;
  return j;
}

Json norm_to_json(const NormCertificate& n) {
  Json blocks = Json::array();
  for (const auto& b : n.blocks) {
    Json positions = Json::array();
    for (const auto& p : b.positions) {
      Json pj = Json::object();
      pj["i"] = p.i;
      pj["j"] = p.j;
      pj["max_modulus_squared"] = to_string(p.max_modulus_squared);
      pj["upper"] = to_string(p.upper);
      positions.push_back(std::move(pj));
    }
    Json bj = Json::object();
    bj["block_size"] = b.block_size;
    bj["positions"] = std::move(positions);
    bj["sum"] = to_string(b.sum);
    blocks.push_back(std::move(bj));
  }
  Json j = Json::object();
  j["blocks"] = std::move(blocks);
  j["bound"] = to_string(n.bound);
  return j;
}

Json perturbation_to_json(const PerturbationCertificate& c) {
  Json j = Json::object();
  j["k"] = c.k;
  j["bound"] = to_string(c.bound);
  j["limit"] = to_string(Rational(1, c.k));
  j["norm"] = norm_to_json(c.norm);
  j["perturbed"] = field_to_json(c.perturbed);
  return j;
}

Json sequence_step_to_json(const SequenceStep& s) {
  Json j = perturbation_to_json(s.certificate);
  j["simple_multiplicity"] = s.simple_multiplicity;
  j["invertible_superdiagonals"] = s.superdiagonals_invertible;
  return j;
}

Json similarity_to_json(const SimilarityCertificate& c) {
  Json cells = Json::array();
  for (const auto& cs : c.cells) {
    Json j = Json::object();
    j["id"] = cs.cell_id;
    j["x"] = to_json(cs.x);
    j["x_inverse"] = to_json(cs.x_inverse);
    cells.push_back(std::move(j));
  }
  Json j = Json::object();
  j["cells"] = std::move(cells);
  j["canonical"] = field_to_json(c.target);
  return j;
}

Json commutant_to_json(const CommutantSummary& c) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < c.basis.basis.size(); ++i) {
    Json j = Json::object();
    j["row_copy"] = c.basis.tags[i].row_copy;
    j["col_copy"] = c.basis.tags[i].col_copy;
    j["diagonal"] = c.basis.tags[i].diagonal;
    j["matrix"] = to_json(c.basis.basis[i]);
    basis.push_back(std::move(j));
  }
  Json j = Json::object();
  j["model"] = model_to_json(c.model);
  j["dimension"] = c.basis.basis.size();
  j["formula_dimension"] = c.formula_dimension;
  if (c.oracle) {
    j["oracle_dimension"] = c.oracle->oracle_dimension;
    j["spans_equal"] = c.oracle->spans_equal;
  } else {
    j["oracle_dimension"] = nullptr;
    j["spans_equal"] = nullptr;
  }
  j["basis"] = std::move(basis);
  return j;
}

Json k0_to_json(const K0Descriptor& k) {
  Json values = Json::array();
  for (const auto& v : k.values) {
    Json j = Json::object();
    j["value"] = to_json(v.spectral_value);
    j["r_A"] = v.rank;
    j["V"] = v.semigroup();
    j["K0"] = v.group();
    j["block_sizes"] = v.block_sizes;
    j["identity_class"] = v.identity_class.counts();
    j["vanishing_block_sizes"] = v.vanishing_block_sizes;
    j["unique"] = v.unique;
    values.push_back(std::move(j));
  }
  return values;
}

Json verdict_to_json(const UniquenessVerdict& v) {
  Json witnesses = Json::array();
  for (const auto& w : v.witnesses) {
    Json j = Json::object();
    j["value"] = to_json(w.spectral_value);
    j["block_size"] = w.block_size;
    j["multiplicity"] = w.multiplicity.to_string();
    witnesses.push_back(std::move(j));
  }
  Json j = Json::object();
  j["unique"] = v.unique;
  j["normal_operator"] = v.normal_operator;
  j["witnesses"] = std::move(witnesses);
  j["narrative"] = v.narrative;
  return j;
}

namespace {

Json stage(const StageStatus& s) {
  Json j = Json::object();
  j["status"] = s.ran ? "done" : "skipped";
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

}  // namespace

Json report_to_json(const AnalysisReport& r, bool include_timing) {
  Json out = Json::object();
  out["format"] = "sidec-report/1";
  out["field"] = field_to_json(r.input);
  out["validation"] = validation_to_json(r.validation);

  Json profile = stage(r.profile_status);
  if (r.profile_status.ran) profile["entries"] = profile_to_json(r.profile);
  out["profile"] = std::move(profile);

  Json si = stage(r.si_status);
  if (r.si_status.ran) si.update(si_to_json(r.si));
  out["strong_irreducibility"] = std::move(si);

  if (r.si_status.ran) {
    Json h = Json::object();
    h["simple_multiplicity"] = true;
    h["invertible_superdiagonals"] = r.si.superdiagonals_invertible;
    h["vacuous"] = r.si.vacuous;
    if (r.analyzed_is_perturbed) h["invertible_superdiagonals_after_perturbation"] = r.analyzed_si.superdiagonals_invertible;
    out["hypotheses"] = std::move(h);
  } else {
    out["hypotheses"] = nullptr;
  }

  out["perturbation"] = r.perturbation ? perturbation_to_json(*r.perturbation) : Json(nullptr);

  Json seq = stage(r.sequence_status);
  if (r.sequence_k_max) seq["k_max"] = *r.sequence_k_max;
  if (r.sequence_status.ran) {
    Json steps = Json::array();
    for (const auto& s : r.sequence) steps.push_back(sequence_step_to_json(s));
    seq["steps"] = std::move(steps);
    seq["strictly_decreasing"] = bounds_strictly_decreasing(r.sequence);
  }
  out["sequence"] = std::move(seq);

  Json red = stage(r.reduction_status);
  red["source"] = r.analyzed_is_perturbed ? "perturbation" : "field";
  if (r.reduction) red.update(similarity_to_json(r.reduction->certificate));
  out["reduction"] = std::move(red);

  Json com = stage(r.commutant_status);
  if (r.commutant) com.update(commutant_to_json(*r.commutant));
  out["commutant"] = std::move(com);

  Json inv = stage(r.invariants_status);
  if (r.k0) inv["values"] = k0_to_json(*r.k0);
  out["invariants"] = std::move(inv);

  Json ver = stage(r.verdict_status);
  if (r.verdict) ver.update(verdict_to_json(*r.verdict));
  out["verdict"] = std::move(ver);

  if (include_timing) {
    Json t = Json::object();
    for (const auto& s : r.timings) t[s.stage + "_ms"] = s.milliseconds;
    out["timing"] = std::move(t);
  }
  return out;
}

namespace {

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

std::string join_counts(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

void skipped_line(std::ostringstream& os, const StageStatus& s) { os << "skipped: " << s.note << "\n"; }

}  // namespace

std::string report_to_text(const AnalysisReport& r, bool include_timing) {
  std::ostringstream os;
  os << "field: " << (r.input.name.empty() ? "(unnamed)" : r.input.name) << " (" << r.input.cells.size()
     << (r.input.cells.size() == 1 ? " cell" : " cells") << ")\n";

  os << "\n== validate ==\n";
  if (!r.validation.valid) {
    os << "invalid\n";
    for (const auto& e : r.validation.errors) os << "  " << e << "\n";
  } else {
    os << "valid\n";
    for (const auto& e : r.profile.entries) {
      os << "  J_" << e.block_size << " at " << e.spectral_value.to_string() << ": multiplicity "
         << e.multiplicity.to_string() << ", weight " << to_string(e.total_weight) << "\n";
    }
  }

  os << "\n== strong irreducibility ==\n";
  if (!r.si_status.ran) {
    skipped_line(os, r.si_status);
  } else {
    for (const auto& c : r.si.cells) {
      os << "  " << c.cell_id << " (n=" << c.block_size << "): "
         << (c.verdict.strongly_irreducible ? "strongly irreducible" : "not strongly irreducible") << ", "
         << c.verdict.reason << "\n";
    }
  }

  os << "\n== hypotheses ==\n";
  if (!r.si_status.ran) {
    skipped_line(os, r.si_status);
  } else {
    os << "(i) simple multiplicity: holds\n";
    os << "(ii) invertible superdiagonals: ";
    if (r.si.vacuous) {
      os << "holds vacuously (every cell is 1x1)\n";
    } else if (r.si.superdiagonals_invertible) {
      os << "holds\n";
    } else {
      std::string cells;
      for (const auto& c : r.si.failing_cells) cells += (cells.empty() ? "" : ", ") + c;
      os << "fails on " << cells << "\n";
    }
  }

  if (r.perturbation) {
    const auto& p = *r.perturbation;
    os << "\n== perturbation ==\n";
    os << "k = " << p.k << ": certified distance <= " << to_string(p.bound) << " < " << to_string(Rational(1, p.k))
       << "\n";
    for (const auto& b : p.norm.blocks) {
      os << "  n=" << b.block_size << ": sum of entry bounds " << to_string(b.sum) << "\n";
    }
    os << "(ii) after perturbation: " << (r.analyzed_si.superdiagonals_invertible ? "holds" : "fails") << "\n";
  }

  if (r.sequence_k_max) {
    os << "\n== sequence ==\n";
    if (!r.sequence_status.ran) {
      skipped_line(os, r.sequence_status);
    } else {
      for (const auto& s : r.sequence) {
        os << "  k=" << s.k << ": bound " << to_string(s.certificate.bound) << " < " << to_string(Rational(1, s.k))
           << ", (ii) " << (s.superdiagonals_invertible ? "holds" : "fails") << "\n";
      }
      os << "bounds strictly decreasing: " << (bounds_strictly_decreasing(r.sequence) ? "yes" : "no") << "\n";
    }
  }

  os << "\n== reduction ==\n";
  if (!r.reduction_status.ran) {
    skipped_line(os, r.reduction_status);
  } else {
    std::size_t moved = 0;
    for (const auto& c : r.reduction->certificate.cells) {
      if (c.x != ExactMatrix::identity(c.x.rows())) ++moved;
    }
    os << "canonical form reached; " << moved << " of " << r.reduction->certificate.cells.size()
       << " cells needed a nontrivial similarity; every certificate re-checked exactly\n";
  }

  os << "\n== commutant ==\n";
  if (!r.commutant_status.ran) {
    skipped_line(os, r.commutant_status);
  } else {
    const auto& c = *r.commutant;
    std::string model;
    for (const auto& s : c.model.summands()) {
      model += (model.empty() ? "" : " + ") + std::string("J_") + std::to_string(s.block_size) + "(" +
               s.spectral_value.to_string() + ")^" + std::to_string(s.multiplicity);
    }
    os << "model: " << model << ", dimension " << c.model.dimension() << "\n";
    os << "commutant dimension " << c.basis.basis.size() << " (closed form " << c.formula_dimension;
    if (c.oracle) {
      os << ", oracle " << c.oracle->oracle_dimension << ", spans " << (c.oracle->spans_equal ? "equal" : "DIFFER");
    } else {
      os << ", " << r.commutant_status.note;
    }
    os << ")\n";
  }

  os << "\n== invariants ==\n";
  if (!r.invariants_status.ran) {
    skipped_line(os, r.invariants_status);
  } else {
    for (const auto& v : r.k0->values) {
      os << "  value " << v.spectral_value.to_string() << ": r_A = " << v.rank << ", V = " << v.semigroup()
         << ", K0 = " << v.group() << ", block sizes " << join_sizes(v.block_sizes) << ", [I] = "
         << join_counts(v.identity_class.counts());
      if (!v.vanishing_block_sizes.empty()) os << ", vanishing at sizes " << join_sizes(v.vanishing_block_sizes);
      os << "\n";
    }
  }

  os << "\n== verdict ==\n";
  if (!r.verdict_status.ran) {
    skipped_line(os, r.verdict_status);
  } else {
    os << (r.verdict->unique ? "unique up to similarity" : "NOT unique up to similarity") << "\n";
    os << r.verdict->narrative << "\n";
  }

  if (include_timing) {
    os << "\n== timing ==\n";
    for (const auto& t : r.timings) os << "  " << t.stage << ": " << t.milliseconds << " ms\n";
  }
  return os.str();
}

}  // namespace sidec
