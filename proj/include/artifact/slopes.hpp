#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "artifact/metric_graph.hpp"

namespace g13 {

using Slopes = std::array<int, 6>;

// Standard filling of a 2×6 rectangle by {1..13} \ {ℓ}. For g < 13 the
// symbols below 14−g sit on loops that are cut away; they fix the slopes on
// the first bridge and hence the ramification at w_{13−g}.
struct Tableau {
  std::array<int, 6> top{}, bottom{};
  int lingering = 0;
  int genus = 13;
  bool operator==(const Tableau&) const = default;
};

// Throws std::invalid_argument with the reason when t is not standard.
void validate(const Tableau& t);
Tableau tableau_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Tableau& t);

// All standard fillings of the rectangle by the given sorted symbols, in the
// order produced by placing each symbol top-first.
std::vector<std::pair<std::array<int, 6>, std::array<int, 6>>> enumerate_fillings(const std::vector<int>& symbols);
// Every (filling, ℓ) case of the given genus: ℓ runs over 14−g..13 and the
// fillings of {1..13} \ {ℓ} in enumerate_fillings order.
std::vector<Tableau> enumerate_tableaux(int genus);

// in(k) = s_k, slopes on β_k at its right end (k = k0..14);
// out(k) = s′_k, slopes on β_{k+1} at its left end (k = k0−1..13).
class SlopeTable {
 public:
  SlopeTable(int genus, std::map<int, Slopes> in, std::map<int, Slopes> out);

  int genus() const { return genus_; }
  int first_loop() const { return 14 - genus_; }
  const Slopes& in(int k) const { return in_.at(k); }
  const Slopes& out(int k) const { return out_.at(k); }
  bool operator==(const SlopeTable&) const = default;
  nlohmann::json to_json() const;

 private:
  int genus_;
  std::map<int, Slopes> in_, out_;
};

// Slopes start at (−2,−1,0,1,2,3) on β₁; a symbol in column c raises index
// 5−c on its loop; the lingering loop changes nothing. Throws on a
// nonstandard tableau.
SlopeTable slopes_from_tableau(const Tableau& t);

// Table from first-bridge slopes and per-loop / per-bridge changes. Loops not
// listed keep their slopes; each row must stay strictly increasing.
SlopeTable slopes_from_steps(int genus, const Slopes& initial, const std::map<int, Slopes>& loop_change,
                             const std::map<int, Slopes>& bridge_change);

// τ(k) = Σ_i (s′_k[i] + 2 − i).
int tau(const SlopeTable& st, int k);

enum class ItemKind { Ordinary, Lingering, DecreasingLoop, DecreasingBridge, Switching };
const char* to_string(ItemKind k);

// Chip on γ_loop placed so that index h can rise across the loop.
struct SwitchingWitness {
  int loop;
  int h;
};

struct LoopProfile {
  std::map<int, ItemKind> loops;    // k0..13
  std::map<int, ItemKind> bridges;  // k0+1..14
  ItemKind special = ItemKind::Ordinary;
  int where = 0;  // loop or bridge index of the special item
  int h = -1;     // index that decreases or switches
  bool ramified_right = false;  // s′₁₃ ≠ (0,…,5)
  bool ramified_left = false;   // more ramification at w_{13−g} than required
  std::map<int, int> tau;       // k0−1..13
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument if more than one item has positive
// multiplicity, or the witness does not fit the table.
LoopProfile classify(const SlopeTable& st, std::optional<SwitchingWitness> witness = {});

// Minimal vanishing requirements at w_{13−g}: for g = 12 a₁ ≥ 2, for g = 11
// a₁ ≥ 3 or (a₀ ≥ 1 and a₂ ≥ 4). The vanishing order of φ_i there is
// (16−g) − s[i].
struct RamificationSpec {
  int genus;
  bool satisfied_by(const Slopes& first_bridge) const;
  // Holds with equality (no extra ramification).
  bool exact_for(const Slopes& first_bridge) const;
};

struct ChipSolution {
  GraphDivisor divisor;          // break divisor of degree 16
  std::map<int, Rational> chip;  // circle coordinate on γ_k, from v_k along the top
  int left_multiplicity;         // at w_{13−g}
};

// Places one chip per loop: at (s+1)ℓ_k when an index rises from s, at the
// witness position on a switching loop, and otherwise at the midpoint of the
// largest gap between the torsion points (σ+1)ℓ_k, σ ∈ [−3, 6], and the two
// vertices. Throws std::invalid_argument naming the loop when no position
// works.
ChipSolution chip_solve(const ChainGraph& g, const SlopeTable& st, std::optional<SwitchingWitness> witness = {});

// Slopes of one function on each bridge: at its left end and at its right end.
struct BridgeSlopes {
  int start, end;
};
using SlopeSchedule = std::map<int, BridgeSlopes>;  // bridges k0..14

// PL function with the given bridge slopes that lies in R(D) for the solved
// divisor, value 0 at w_{13−g}. A slope drop on β_k happens at n_k/4.
PLFunction build_function(const GraphPtr& g, const ChipSolution& chips, const SlopeSchedule& schedule);

SlopeSchedule standard_schedule(const SlopeTable& st, int i);
PLFunction build_phi(int i, const GraphPtr& g, const SlopeTable& st, const ChipSolution& chips);

// Functions used on a switching loop γ_ℓ switching slope h.
// φ^∞_h follows index h up to β_ℓ and index h+1 from β_{ℓ+1} on.
SlopeSchedule infinity_schedule(const SlopeTable& st, int loop, int h);

}  // namespace g13
