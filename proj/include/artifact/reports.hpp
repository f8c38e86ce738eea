#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "artifact/graded.hpp"
#include "artifact/independence.hpp"

namespace g13 {

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Self-contained JSON report of one subcommand run. Rationals are written as
// strings so every number stays exact.
struct RunReport {
  std::string subcommand;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  nlohmann::json timing = nlohmann::json::object();
  std::vector<Verdict> verdicts;

  void check(std::string name, bool pass, std::string detail = {});
  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Reference values the reports are checked against.
namespace golden {
// η-coefficients of the two top classes, as polynomials in θ and c_i.
GradedElement eta_poly_z();
GradedElement eta_poly_y();
// Coefficients of θ⁶, θ⁵y₁, θ⁴y₁², θ³y₁³ after substituting c_i.
std::vector<Rational> theta_y_z();
std::vector<Rational> theta_y_y();
// B_2, B_4, …, B_24.
std::vector<Rational> bernoulli_even();
}  // namespace golden

// Coefficients of θ^{6−i}·y₁^i, i = 0..3, in a degree-12 polynomial.
std::vector<Rational> theta_y_coefficients(const GradedElement& x);

RunReport report_virtual_class();
RunReport report_count_bundles(int powers_max_n = 72);
RunReport report_divisors();

// Compact per-case record for batch runs.
struct CaseSummary {
  std::size_t index = 0;
  std::string name;
  bool ok = false;
  std::string error;
  int escalations = 0;
  std::string min_margin;  // exact, empty when no certificate
  bool one_more_lemma = false;
  std::vector<std::string> omitted;
  nlohmann::json to_json() const;
};
CaseSummary summarize(std::size_t index, const std::string& name, const CaseResult& r);

// Runs every case on `jobs` threads and returns summaries in case order. The
// optional hook sees each full result on the worker thread that produced it.
std::vector<CaseSummary> run_batch(const std::vector<FamilyCase>& cases, int jobs,
                                   const std::function<void(std::size_t, const CaseResult&)>& hook = {});

RunReport report_prove_case(const CaseInput& input, const nlohmann::json& input_json);

struct EnumerateOptions {
  int genus = 13;
  Family family = Family::VertexAvoiding;
  Integer scale_base = 10000;
  int jobs = 1;
  bool all = true;       // otherwise every `stride`-th case
  std::size_t stride = 1;
  bool include_cases = false;  // per-case summaries in outputs
};
// Vertex-avoiding families must certify in full; the others are reported
// with their counts only.
RunReport report_enumerate(const EnumerateOptions& opt);

// Every reference value, plus the exhaustive g = 11, 12, 13 runs unless
// `with_enumeration` is false.
RunReport report_regress_all(int jobs, bool with_enumeration = true, const Integer& scale_base = 10000);

}  // namespace g13
