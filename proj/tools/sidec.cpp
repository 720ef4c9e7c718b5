// sidec: command-line front end for the strong irreducibility pipeline.
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "sidec/errors.hpp"
#include "sidec/family_io.hpp"
#include "sidec/field_io.hpp"
#include "sidec/generators.hpp"
#include "sidec/report.hpp"
#include "sidec/verify.hpp"

using namespace sidec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotUnique = 2;

struct Output {
  std::string format = "text";
  std::string path;

  bool json() const { return format == "json"; }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
  }
  void write(const Json& j) const { write(format_json(j)); }
};

void add_output(CLI::App* cmd, Output& out, bool with_format = true) {
  if (with_format) cmd->add_option("--format", out.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("-o,--output", out.path, "write to this file instead of stdout");
}

Json load_json(const std::string& path) { return parse_json_text(read_text_file(path), path); }

// Reduces when needed; K0 and commutant need the canonical form.
OperatorField canonical_of(const OperatorField& field) {
  require_valid(field);
  if (is_canonical(field)) return field;
  return reduce_field_to_canonical(field).canonical;
}

int cmd_validate(const std::string& file, const Output& out) {
  const OperatorField f = parse_field_file(file);
  const ValidationReport v = validate_field(f);
  if (out.json()) {
    Json j = validation_to_json(v);
    if (v.valid) j["profile"] = profile_to_json(multiplicity_profile(f));
    out.write(j);
  } else {
    std::string text = v.valid ? "valid\n" : "invalid\n";
    for (const auto& e : v.errors) text += "  " + e + "\n";
    if (v.valid) {
      for (const auto& e : multiplicity_profile(f).entries) {
        text += "  J_" + std::to_string(e.block_size) + " at " + e.spectral_value.to_string() + ": multiplicity " +
                e.multiplicity.to_string() + ", weight " + to_string(e.total_weight) + "\n";
      }
    }
    out.write(text);
  }
  return v.valid ? kExitOk : kExitError;
}

int cmd_si_check(const std::string& file, const std::string& epsilon, const Output& out) {
  const OperatorField f = parse_field_file(file);
  require_valid(f);
  const FieldSiReport si = field_si_check(f, parse_rational(epsilon));
  if (out.json()) {
    Json j = si_to_json(si);
    Json near = Json::object();
    for (const auto& c : si.cells) {
      if (c.near_singular.empty()) continue;
      Json list = Json::array();
      for (const auto& [i, k] : c.near_singular) list.push_back(std::to_string(i) + "," + std::to_string(k));
      near[c.cell_id] = std::move(list);
    }
    j["near_singular"] = std::move(near);
    out.write(j);
    return kExitOk;
  }
  std::string text;
  for (const auto& c : si.cells) {
    text += c.cell_id + " (n=" + std::to_string(c.block_size) + "): " +
            (c.verdict.strongly_irreducible ? "strongly irreducible" : "not strongly irreducible") + ", " +
            c.verdict.reason + "\n";
    for (const auto& [i, k] : c.near_singular) {
      text += "  near-singular superdiagonal at (" + std::to_string(i) + "," + std::to_string(k) + ")\n";
    }
  }
  text += std::string("invertible superdiagonals: ") +
          (si.vacuous ? "vacuous" : si.superdiagonals_invertible ? "holds" : "fails") + "\n";
  out.write(text);
  return kExitOk;
}

int cmd_perturb(const std::string& file, unsigned k, bool field_only, const Output& out) {
  const OperatorField f = parse_field_file(file);
  require_valid(f);
  const PerturbationCertificate c = perturb_superdiagonals(f, k);
  if (field_only) {
    out.write(serialize_field(c.perturbed));
  } else if (out.json()) {
    out.write(perturbation_to_json(c));
  } else {
    std::string text = "k = " + std::to_string(k) + ": certified distance <= " + to_string(c.bound) + " < " +
                       to_string(Rational(1, k)) + "\n";
    for (const auto& b : c.norm.blocks) {
      text += "  n=" + std::to_string(b.block_size) + ": sum of entry bounds " + to_string(b.sum) + "\n";
      for (const auto& p : b.positions) {
        text += "    (" + std::to_string(p.i) + "," + std::to_string(p.j) + "): max |diff|^2 = " +
                to_string(p.max_modulus_squared) + ", |diff| <= " + to_string(p.upper) + "\n";
      }
    }
    out.write(text);
  }
  return kExitOk;
}

int cmd_reduce(const std::string& file, bool field_only, const Output& out) {
  const OperatorField f = parse_field_file(file);
  require_valid(f);
  const CanonicalReduction r = reduce_field_to_canonical(f);
  if (field_only) {
    out.write(serialize_field(r.canonical));
  } else if (out.json()) {
    out.write(similarity_to_json(r.certificate));
  } else {
    std::string text;
    for (const auto& c : r.certificate.cells) {
      text += "cell " + c.cell_id + ": X =\n" + c.x.to_string() + "\n";
    }
    text += "canonical form reached; every certificate re-checked exactly\n";
    out.write(text);
  }
  return kExitOk;
}

int cmd_commutant(const std::string& file, const Output& out) {
  const OperatorField f = parse_field_file(file);
  const JordanSumModel model = JordanSumModel::from_field(canonical_of(f));
  CommutantBasis basis = structured_commutant_basis(model);
  CommutantSummary s{model, std::move(basis), commutant_dimension_formula(model), std::nullopt};
  if (model.dimension() <= AnalysisOptions{}.oracle_max_dimension) s.oracle = compare_with_oracle(model, s.basis);
  if (out.json()) {
    out.write(commutant_to_json(s));
    return kExitOk;
  }
  std::string text = "model dimension " + std::to_string(model.dimension()) + "\ncommutant dimension " +
                     std::to_string(s.basis.basis.size()) + " (closed form " + std::to_string(s.formula_dimension);
  if (s.oracle) {
    text += ", oracle " + std::to_string(s.oracle->oracle_dimension) + ", spans " +
            (s.oracle->spans_equal ? "equal" : "DIFFER");
  }
  out.write(text + ")\n");
  return kExitOk;
}

int cmd_k0(const std::string& file, const Output& out) {
  const K0Descriptor k = compute_v_k0(canonical_of(parse_field_file(file)));
  if (out.json()) {
    out.write(k0_to_json(k));
    return kExitOk;
  }
  std::string text;
  for (const auto& v : k.values) {
    std::string cls, sizes;
    for (auto c : v.identity_class.counts()) cls += (cls.empty() ? "" : ",") + std::to_string(c);
    for (auto s : v.block_sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
    text += "value " + v.spectral_value.to_string() + ": r_A = " + std::to_string(v.rank) + ", V = " + v.semigroup() +
            ", K0 = " + v.group() + ", block sizes (" + sizes + "), [I] = (" + cls + ")\n";
  }
  out.write(text);
  return kExitOk;
}

int cmd_decide(const std::string& file, const Output& out) {
  const UniquenessVerdict v = decide_uniqueness(parse_field_file(file));
  if (out.json()) {
    out.write(verdict_to_json(v));
  } else {
    out.write(std::string(v.unique ? "unique up to similarity" : "NOT unique up to similarity") + "\n" + v.narrative +
              "\n");
  }
  return v.unique ? kExitOk : kExitNotUnique;
}

int cmd_sequence(const std::string& file, unsigned k_max, const Output& out) {
  const OperatorField f = parse_field_file(file);
  require_valid(f);
  const auto steps = approximation_sequence(f, k_max);
  if (out.json()) {
    Json j = Json::object();
    j["k_max"] = k_max;
    Json arr = Json::array();
    for (const auto& s : steps) arr.push_back(sequence_step_to_json(s));
    j["steps"] = std::move(arr);
    j["strictly_decreasing"] = bounds_strictly_decreasing(steps);
    out.write(j);
    return kExitOk;
  }
  std::string text;
  for (const auto& s : steps) {
    text += "k=" + std::to_string(s.k) + ": bound " + to_string(s.certificate.bound) + " < " +
            to_string(Rational(1, s.k)) + ", invertible superdiagonals " +
            (s.superdiagonals_invertible ? "yes" : "no") + "\n";
  }
  text += std::string("bounds strictly decreasing: ") + (bounds_strictly_decreasing(steps) ? "yes" : "no") + "\n";
  out.write(text);
  return kExitOk;
}

int cmd_masa_match(const std::string& p_file, const std::string& q_file, const Output& out) {
  const FamilyFile p = family_from_json(load_json(p_file));
  const FamilyFile q = family_from_json(load_json(q_file));
  if (model_to_json(p.model) != model_to_json(q.model)) throw PreconditionError("the two families live on different models");
  const FamilyConjugation c = conjugate_idempotent_families(p.model, p.family, q.family);
  if (out.json()) {
    out.write(conjugation_to_json(p.model, p.family, q.family, c));
  } else {
    std::string text = "X =\n" + c.x.to_string() + "\n";
    for (std::size_t i = 0; i < c.match.size(); ++i) {
      text += "Q atom " + std::to_string(i) + " -> P atom " + std::to_string(c.match[i]) + "\n";
    }
    out.write(text);
  }
  return kExitOk;
}

int cmd_verify(const std::string& file, const Output& out) {
  const verify::Result r = verify::verify_document(load_json(file));
  if (out.json()) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      Json j = Json::object();
      j["name"] = c.name;
      j["passed"] = c.passed;
      if (!c.detail.empty()) j["detail"] = c.detail;
      checks.push_back(std::move(j));
    }
    Json j = Json::object();
    j["kind"] = r.kind;
    j["ok"] = r.ok();
    j["checks"] = std::move(checks);
    out.write(j);
  } else {
    std::string text;
    for (const auto& c : r.checks) {
      text += std::string(c.passed ? "ok   " : "FAIL ") + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]") + "\n";
    }
    text += r.ok() ? "all certificates verified\n" : "verification FAILED\n";
    out.write(text);
  }
  return r.ok() ? kExitOk : kExitError;
}

int cmd_analyze(const std::string& file, const AnalysisOptions& options, bool timing, const Output& out) {
  const AnalysisReport r = run_analysis(parse_field_file(file), options);
  if (out.json()) {
    out.write(report_to_json(r, timing));
  } else {
    out.write(report_to_text(r, timing));
  }
  if (!r.validation.valid) return kExitError;
  return verdict_exit_code(r) == 2 ? kExitNotUnique : kExitOk;
}

int cmd_generate_family(const std::string& file, std::uint64_t seed, bool canonical, const Output& out) {
  const JordanSumModel model = JordanSumModel::from_field(canonical_of(parse_field_file(file)));
  IdempotentFamily fam = canonical_family(model);
  if (!canonical) {
    gen::Rng rng(seed);
    fam = gen::conjugated_canonical_family(rng, model, structured_commutant_basis(model));
  }
  out.write(family_to_json(model, fam));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong irreducibility, canonical forms and K0 invariants of triangular operator fields"};
  app.require_subcommand(1);

  std::string file, file2, epsilon = "0";
  unsigned k = 1, k_max = 1;
  std::uint64_t seed = 0;
  bool field_only = false, canonical = false, timing = false;
  std::optional<unsigned> perturb, sequence;
  Output out;
  int code = kExitOk;

  auto* validate = app.add_subcommand("validate", "check a field file and print its multiplicity profile");
  validate->add_option("field", file, "field file")->required();
  add_output(validate, out);

  auto* si = app.add_subcommand("si-check", "strong irreducibility of every fiber");
  si->add_option("field", file, "field file")->required();
  si->add_option("--epsilon", epsilon, "report superdiagonal entries with 0 < |e| < epsilon (rational)");
  add_output(si, out);

  auto* pert = app.add_subcommand("perturb", "move to a nearby field with invertible superdiagonals");
  pert->add_option("field", file, "field file")->required();
  pert->add_option("--k", k, "distance stays below 1/k")->required()->check(CLI::PositiveNumber);
  pert->add_flag("--field-only", field_only, "emit only the perturbed field file");
  add_output(pert, out);

  auto* reduce = app.add_subcommand("reduce", "similarity onto the canonical Jordan form, with certificates");
  reduce->add_option("field", file, "field file")->required();
  reduce->add_flag("--field-only", field_only, "emit only the canonical field file");
  add_output(reduce, out);

  auto* com = app.add_subcommand("commutant", "commutant dimension and basis of the canonical model");
  com->add_option("field", file, "field file")->required();
  add_output(com, out);

  auto* k0 = app.add_subcommand("k0", "rank function, V and K0 per spectral value");
  k0->add_option("field", file, "field file")->required();
  add_output(k0, out);

  auto* decide = app.add_subcommand("decide", "is the strongly irreducible decomposition unique up to similarity");
  decide->add_option("field", file, "field file")->required();
  add_output(decide, out);

  auto* seq = app.add_subcommand("sequence", "approximating sequence A_1 .. A_kmax with certificates");
  seq->add_option("field", file, "field file")->required();
  seq->add_option("--k-max", k_max, "last index")->required()->check(CLI::PositiveNumber);
  add_output(seq, out);

  auto* masa = app.add_subcommand("masa-match", "conjugate two maximal abelian idempotent families");
  masa->add_option("p_family", file, "family file P")->required();
  masa->add_option("q_family", file2, "family file Q")->required();
  add_output(masa, out);

  auto* ver = app.add_subcommand("verify", "independently re-check a structured report or masa-match certificate");
  ver->add_option("document", file, "report or certificate (JSON)")->required();
  add_output(ver, out);

  auto* analyze = app.add_subcommand("analyze", "run the whole pipeline and emit a report");
  analyze->add_option("field", file, "field file")->required();
  analyze->add_option("--perturb", perturb, "perturb with this k before reducing")->check(CLI::PositiveNumber);
  analyze->add_option("--sequence", sequence, "also build the approximating sequence up to this k")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--timing", timing, "include per-stage wall times");
  add_output(analyze, out);

  auto* family = app.add_subcommand("generate-family", "write a maximal abelian idempotent family for a field's model");
  family->add_option("field", file, "field file")->required();
  family->add_option("--seed", seed, "seed of the random commutant conjugation");
  family->add_flag("--canonical", canonical, "emit the copy projections themselves");
  add_output(family, out, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*validate) code = cmd_validate(file, out);
    else if (*si) code = cmd_si_check(file, epsilon, out);
    else if (*pert) code = cmd_perturb(file, k, field_only, out);
    else if (*reduce) code = cmd_reduce(file, field_only, out);
    else if (*com) code = cmd_commutant(file, out);
    else if (*k0) code = cmd_k0(file, out);
    else if (*decide) code = cmd_decide(file, out);
    else if (*seq) code = cmd_sequence(file, k_max, out);
    else if (*masa) code = cmd_masa_match(file, file2, out);
    else if (*ver) code = cmd_verify(file, out);
    else if (*family) code = cmd_generate_family(file, seed, canonical, out);
    else if (*analyze) {
      AnalysisOptions options;
      options.perturb_k = perturb;
      options.sequence_k_max = sequence;
      code = cmd_analyze(file, options, timing, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return code;
}
