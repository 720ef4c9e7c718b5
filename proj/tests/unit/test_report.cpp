#include <doctest.h>

#include "helpers.hpp"
#include "sidec/family_io.hpp"
#include "sidec/field_io.hpp"
#include "sidec/generators.hpp"
#include "sidec/report.hpp"
#include "sidec/verify.hpp"

using namespace sidec;
using namespace sidec::testing;

namespace {

OperatorField fixture(const std::string& name) {
  return parse_field_file(std::string(SIDEC_FIXTURE_DIR) + "/" + name + ".json");
}

bool any_failed(const verify::Result& r) { return !r.ok(); }

}  // namespace

TEST_CASE("example fixture report") {
  const AnalysisReport r = run_analysis(fixture("three_sizes"), {});
  REQUIRE(r.verdict);
  CHECK(r.verdict->unique);
  CHECK(verdict_exit_code(r) == 0);
  const std::string text = format_json(report_to_json(r, false));
  CHECK(text.find("\"K0\": \"Z^3\"") != std::string::npos);
  CHECK(text.find("\"identity_class\": [2,3,2]") != std::string::npos);
  CHECK(text.find("timing") == std::string::npos);
  CHECK(format_json(report_to_json(r, true)).find("\"timing\"") != std::string::npos);
}

TEST_CASE("text sections appear in fixed order") {
  const std::string text = report_to_text(run_analysis(fixture("three_sizes"), {}), false);
  std::size_t last = 0;
  for (const char* s : {"== validate ==", "== strong irreducibility ==", "== hypotheses ==", "== invariants ==",
                        "== verdict =="}) {
    const std::size_t at = text.find(s);
    REQUIRE(at != std::string::npos);
    CHECK(at > last);
    last = at;
  }
}

TEST_CASE("zero superdiagonal without perturbation skips reduction with an instruction") {
  const AnalysisReport r = run_analysis(fixture("zero_superdiagonal"), {});
  CHECK_FALSE(r.reduction_status.ran);
  CHECK(r.reduction_status.note.find("--perturb") != std::string::npos);
  CHECK_FALSE(r.verdict_status.ran);

  AnalysisOptions o;
  o.perturb_k = 4;
  const AnalysisReport p = run_analysis(fixture("zero_superdiagonal"), o);
  CHECK(p.reduction_status.ran);
  REQUIRE(p.verdict);
  CHECK(p.verdict->unique);
}

TEST_CASE("sequence flag on a bounded field") {
  AnalysisOptions o;
  o.sequence_k_max = 10;
  const AnalysisReport r = run_analysis(fixture("zero_superdiagonal"), o);
  REQUIRE(r.sequence.size() == 10);
  CHECK(bounds_strictly_decreasing(r.sequence));
  for (const auto& s : r.sequence) CHECK(s.certificate.bound < Rational(1, s.k));

  const AnalysisReport inf = run_analysis(fixture("normal_infinite"), o);
  CHECK_FALSE(inf.sequence_status.ran);
}

TEST_CASE("not unique verdict cites the two families") {
  const AnalysisReport r = run_analysis(fixture("normal_infinite"), {});
  REQUIRE(r.verdict);
  CHECK_FALSE(r.verdict->unique);
  CHECK(verdict_exit_code(r) == 2);
  const std::string text = report_to_text(r, false);
  const std::string verdict = text.substr(text.find("== verdict =="));
  CHECK(verdict.find("F1") != std::string::npos);
  CHECK(verdict.find("F2") != std::string::npos);
}

TEST_CASE("reports are deterministic and verify") {
  AnalysisOptions o;
  o.perturb_k = 3;
  o.sequence_k_max = 4;
  for (const char* name : {"three_sizes", "noncanonical_invertible", "zero_superdiagonal", "normal_infinite", "mixed_values"}) {
    const Json a = report_to_json(run_analysis(fixture(name), o), false);
    const Json b = report_to_json(run_analysis(fixture(name), o), false);
    CHECK(format_json(a) == format_json(b));
    const auto v = verify::verify_document(a);
    CHECK_MESSAGE(v.ok(), name);
  }
}

TEST_CASE("verify rejects tampered reports") {
  AnalysisOptions o;
  o.perturb_k = 2;
  o.sequence_k_max = 2;
  const Json good = report_to_json(run_analysis(fixture("zero_superdiagonal"), o), false);
  REQUIRE(verify::verify_document(good).ok());

  Json bad_bound = good;
  bad_bound["perturbation"]["bound"] = "1/2";
  CHECK(any_failed(verify::verify_document(bad_bound)));

  Json bad_entry = good;
  bad_entry["perturbation"]["perturbed"]["cells"][0]["entries"]["1,2"] = to_json(GaussianRational(Rational(1, 1000)));
  CHECK(any_failed(verify::verify_document(bad_entry)));

  Json bad_x = good;
  bad_x["reduction"]["cells"][1]["x"]["entries"][0][2] = to_json(GaussianRational(Rational(17)));
  CHECK(any_failed(verify::verify_document(bad_x)));

  Json bad_basis = good;
  bad_basis["commutant"]["basis"].erase(bad_basis["commutant"]["basis"].size() - 1);
  CHECK(any_failed(verify::verify_document(bad_basis)));

  Json bad_class = good;
  bad_class["invariants"]["values"][0]["identity_class"] = {5};
  CHECK(any_failed(verify::verify_document(bad_class)));

  Json bad_verdict = good;
  bad_verdict["verdict"]["unique"] = false;
  CHECK(any_failed(verify::verify_document(bad_verdict)));

  Json bad_seq = good;
  bad_seq["sequence"]["steps"][1]["norm"]["blocks"][0]["positions"][0]["upper"] = "0";
  CHECK(any_failed(verify::verify_document(bad_seq)));

  CHECK(any_failed(verify::verify_document(Json::object())));
}

TEST_CASE("masa-match certificates verify and tampering is caught") {
  const JordanSumModel model = JordanSumModel::from_field(three_size_field());
  gen::Rng rng(71);
  const auto basis = structured_commutant_basis(model);
  const IdempotentFamily p = canonical_family(model);
  const IdempotentFamily q = gen::conjugated_canonical_family(rng, model, basis);

  // Family files round trip.
  const FamilyFile back = family_from_json(parse_json_text(format_json(family_to_json(model, q)), "family"));
  CHECK(model_to_json(back.model) == model_to_json(model));
  REQUIRE(back.family.members.size() == q.members.size());
  for (std::size_t i = 0; i < q.members.size(); ++i) CHECK(back.family.members[i] == q.members[i]);

  const FamilyConjugation c = conjugate_idempotent_families(model, p, q);
  const Json cert = conjugation_to_json(model, p, q, c);
  const auto v = verify::verify_document(cert);
  CHECK(v.kind == "masa-match");
  CHECK(v.ok());

  Json bad = cert;
  bad["x"]["entries"][0][2] = to_json(GaussianRational(Rational(3)));
  CHECK_FALSE(verify::verify_document(bad).ok());

  Json swapped = cert;
  std::swap(swapped["match"][0], swapped["match"][2]);
  CHECK_FALSE(verify::verify_document(swapped).ok());
}
