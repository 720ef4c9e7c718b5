#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sidec/canonical_reduction.hpp"
#include "sidec/commutant.hpp"
#include "sidec/json_codec.hpp"
#include "sidec/k_invariants.hpp"
#include "sidec/strong_irreducibility.hpp"

namespace sidec {

struct AnalysisOptions {
  std::optional<unsigned> perturb_k;
  std::optional<unsigned> sequence_k_max;
  /// The brute-force commutant oracle solves a d²×d² system; above this
  /// model dimension it is skipped.
  std::size_t oracle_max_dimension = 24;
  Limits limits = default_limits();
};

/// Outcome of one pipeline stage. A skipped stage carries the reason, and
/// an instruction when the caller can fix it.
struct StageStatus {
  bool ran = false;
  std::string note;
};

struct CommutantSummary {
  JordanSumModel model;
  CommutantBasis basis;
  std::size_t formula_dimension = 0;
  std::optional<OracleComparison> oracle;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0;
};

struct AnalysisReport {
  OperatorField input;
  ValidationReport validation;
  StageStatus profile_status;
  MultiplicityProfile profile;
  StageStatus si_status;
  FieldSiReport si;

  std::optional<PerturbationCertificate> perturbation;
  StageStatus sequence_status;
  std::optional<unsigned> sequence_k_max;
  std::vector<SequenceStep> sequence;

  /// Input, or the perturbed field when --perturb was given.
  OperatorField analyzed;
  bool analyzed_is_perturbed = false;
  FieldSiReport analyzed_si;

  StageStatus reduction_status;
  std::optional<CanonicalReduction> reduction;
  StageStatus commutant_status;
  std::optional<CommutantSummary> commutant;
  StageStatus invariants_status;
  std::optional<K0Descriptor> k0;
  StageStatus verdict_status;
  std::optional<UniquenessVerdict> verdict;

  std::vector<StageTiming> timings;
};

/// validate → profile → strong irreducibility → [perturb] → [sequence] →
/// reduce → commutant → invariants → verdict. Stages whose preconditions
/// fail are recorded as skipped and later stages that depend on them are
/// skipped too.
AnalysisReport run_analysis(const OperatorField& field, const AnalysisOptions& options);

/// Machine-readable report with every certificate; deterministic except
/// for the optional "timing" member.
Json report_to_json(const AnalysisReport& report, bool include_timing);
/// Human-readable summary; sections always appear in the same order.
std::string report_to_text(const AnalysisReport& report, bool include_timing);

/// Exit status convention shared by the CLI: 0 unique or no verdict,
/// 2 not unique.
int verdict_exit_code(const AnalysisReport& report);

// Pieces reused by the single-stage subcommands.
Json validation_to_json(const ValidationReport& v);
Json profile_to_json(const MultiplicityProfile& p);
Json si_to_json(const FieldSiReport& si);
Json norm_to_json(const NormCertificate& n);
Json perturbation_to_json(const PerturbationCertificate& c);
Json sequence_step_to_json(const SequenceStep& s);
Json similarity_to_json(const SimilarityCertificate& c);
Json commutant_to_json(const CommutantSummary& c);
Json k0_to_json(const K0Descriptor& k);
Json verdict_to_json(const UniquenessVerdict& v);

}  // namespace sidec
