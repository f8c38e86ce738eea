#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "artifact/metric_graph.hpp"
#include "artifact/slopes.hpp"

namespace g13 {

// Blocks γ_{k0}..γ_{z1}, γ_{z1+1}..γ_{z2}, γ_{z2+1}..γ₁₃ with target slopes
// 4, 3, 2 for θ.
struct BlockPlan {
  int first_loop = 1;
  int z1 = 0, z2 = 0;
  const char* rule = "";
  int sigma(int k) const { return k <= z1 ? 4 : k <= z2 ? 3 : 2; }
  std::array<std::vector<int>, 3> blocks() const;
  int block_of(int k) const { return k <= z1 ? 0 : k <= z2 ? 1 : 2; }
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument for a profile outside the handled cases.
BlockPlan choose_blocks(const LoopProfile& profile, const SlopeTable& st);

enum class PermKind { NotPermissible, Ordinary, New, Departing, NewDeparting };
const char* to_string(PermKind p);

// Slopes of ψ entering γ_k (end of β_k) and leaving it (start of β_{k+1}).
int slope_in(const PLFunction& psi, int k);
int slope_out(const PLFunction& psi, int k);

// Permissible when s_k(ψ) ≤ s_k(θ) ≤ s′_k(ψ); new when s_k(ψ) < s_k(θ);
// departing when s′_k(ψ) > s_k(θ).
PermKind permissible(const PLFunction& psi, int k, const BlockPlan& plan);
inline bool is_departing(PermKind p) { return p == PermKind::Departing || p == PermKind::NewDeparting; }

// One of the pairwise sums, labelled "ij" for φ_i + φ_j, or "x+y" when a
// summand is one of the switching-loop functions ("inf", "A", "B", "C").
struct Candidate {
  std::string label;
  std::string left, right;  // summand names
  PLFunction f;
};

// Permissible on some loop of the block; for a block without loops, slope
// equal to the block's target at the end of the bridge after the previous block.
bool permissible_on_block(const PLFunction& psi, int block, const BlockPlan& plan);

struct BasisSelection {
  std::vector<Candidate> retained;  // 20 functions
  std::vector<std::string> omitted;
  std::vector<std::string> added;   // switching case: φ^∞_h + φ
  std::string rule;
  std::vector<std::string> omission_candidates;
  std::array<int, 3> block_counts{};  // permissible retained functions per block
  std::array<int, 3> block_loops{};
  std::map<std::string, bool> conditions;  // "i".."vi" and "counts"
  nlohmann::json to_json() const;
};

struct SelectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Applies the omission rule for the profile. The pool is the 21 sums of
// `components` (plus φ^∞_h sums in the switching case). With an override,
// the named label must be among the rule's candidates.
BasisSelection select_basis(const LoopProfile& profile, const SlopeTable& st, const BlockPlan& plan,
                            const std::map<std::string, PLFunction>& components,
                            const std::optional<std::string>& omit_override = {});

struct Assignment {
  std::string place;  // "loop:k" or "bridge:k"
  std::string label;
  Rational coefficient;
  std::string how;    // first-bridge, departing, three-shape, block-exit, empty-block, last-bridge
  int unassigned_permissible = -1;  // on loops: count at entry
};

struct BuilderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildResult {
  std::vector<Rational> coefficients;  // aligned with selection.retained
  std::vector<Assignment> log;
  std::map<std::string, std::string> placed;  // label -> place
};

// The loop-by-loop construction. Throws BuilderError when a step's
// precondition fails (too few unassigned permissible functions, two departing
// functions, more than three non-departing ones, no uniquely minimal shape).
BuildResult run_builder(const BasisSelection& basis, const BlockPlan& plan, const LoopProfile& profile,
                        const ChainGraph& graph);

// min over φ ∈ T of φ − c(φ, θ), c(φ, θ) = min over Γ of φ − θ.
PLFunction best_approximation(const PLFunction& theta, const std::vector<PLFunction>& T);
// The shifts c(φ, θ).
std::vector<Rational> approximation_shifts(const PLFunction& theta, const std::vector<PLFunction>& T);

struct CaseInput {
  SlopeTable table;
  std::optional<SwitchingWitness> switching;
  Integer scale_base = 10000;
  std::optional<std::string> omit_override;
  int max_escalations = 2;  // retries with B², B⁴, … on failure
};

CaseInput case_from_tableau(const Tableau& t, const Integer& scale_base = 10000);

struct SwitchingReport {
  std::vector<std::string> t_labels;
  // "selection-rule" when the T_j / T′ rules give θ back; "region-matching"
  // when T had to be rebuilt by pairing each B″ function with a sum of S
  // whose best approximation touches θ where that function is minimal.
  std::string construction;
  std::string rule_outcome;  // why the selection rules were not enough
  GraphPoint crossing_a, crossing_b;  // where φ_A and φ_B switch between their two pieces
  bool theta_matches = false;  // best approximation equals θ
  IndependenceCertificate certificate;
  nlohmann::json to_json() const;
};

struct CaseResult {
  bool ok = false;
  std::string error;  // stage and message when not ok
  Integer scale_base;
  int escalations = 0;
  std::optional<LoopProfile> profile;
  std::optional<BlockPlan> plan;
  std::optional<BasisSelection> selection;
  std::optional<BuildResult> build;
  std::optional<IndependenceCertificate> certificate;
  std::optional<SwitchingReport> switching;
  bool one_more_lemma = false;  // no function is minimal right of v_{k+1} of its place
  GraphPtr graph;
  std::optional<ChipSolution> chips;
  std::vector<PLFunction> phi;
  std::optional<PLFunction> theta;
  nlohmann::json to_json() const;
};

// slopes → chips → φ → blocks → basis → builder → certificate. Never throws
// for mathematical failures; they come back in `error`.
CaseResult prove_case(const CaseInput& input);

// Case families for batch runs. Apart from vertex-avoiding, g = 13 only: slope
// tables where every loop raises one index, plus the family's single item of
// positive multiplicity.
enum class Family { VertexAvoiding, Switching, RamifiedRight, RamifiedLeft, DecreasingLoop, DecreasingBridge };
const char* to_string(Family f);
std::optional<Family> parse_family(const std::string& name);

struct FamilyCase {
  std::string name;  // tableau or step description
  CaseInput input;
};

// Every case of the family in a fixed order.
std::vector<FamilyCase> family_cases(Family f, int genus = 13, const Integer& scale_base = 10000);

}  // namespace g13
