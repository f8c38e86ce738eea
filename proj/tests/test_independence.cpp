#include <doctest.h>

#include <set>

#include "artifact/independence.hpp"

using namespace g13;

namespace {

Tableau worked_example() { return {{1, 3, 4, 8, 9, 10}, {2, 5, 7, 11, 12, 13}, 6, 13}; }

std::map<std::string, std::string> places(const CaseResult& r) {
  std::map<std::string, std::string> out;
  for (const auto& a : r.build->log) out[a.label] = a.place;
  return out;
}

// Structural invariants every certified vertex-avoiding case must meet.
void check_structure(const CaseResult& r, int genus) {
  REQUIRE(r.ok);
  REQUIRE(r.build);
  int loops = 0, bridges = 0;
  std::set<std::string> loop_places;
  for (const auto& a : r.build->log) {
    if (a.place.rfind("loop:", 0) == 0) {
      ++loops;
      loop_places.insert(a.place);
    } else {
      ++bridges;
    }
  }
  CHECK(loops == genus);
  CHECK(loop_places.size() == static_cast<std::size_t>(genus));
  CHECK(bridges == 20 - genus);
  CHECK(r.selection->retained.size() == 20);
  for (const auto& [name, ok] : r.selection->conditions) CHECK_MESSAGE(ok, name);
  auto blocks = r.plan->blocks();
  for (int b = 0; b < 3; ++b)
    CHECK(r.selection->block_counts[b] == static_cast<int>(blocks[b].size()) + 1);
  CHECK(r.certificate->ok);
  CHECK(r.certificate->min_margin > 0);
  CHECK(r.certificate->entries.size() == 20);
  CHECK(r.one_more_lemma);
  // Every φ_i lies in R(D).
  for (const auto& phi : r.phi) CHECK(in_linear_system(r.chips->divisor, phi));
}

}  // namespace

TEST_CASE("blocks and omission for the worked example") {
  SlopeTable st = slopes_from_tableau(worked_example());
  LoopProfile p = classify(st);
  BlockPlan plan = choose_blocks(p, st);
  CHECK(plan.z1 == 6);
  CHECK(plan.z2 == 7);
  CHECK(plan.sigma(3) == 4);
  CHECK(plan.sigma(7) == 3);
  CHECK(plan.sigma(13) == 2);

  CaseResult r = prove_case(case_from_tableau(worked_example()));
  check_structure(r, 13);
  std::set<std::string> cands(r.selection->omission_candidates.begin(), r.selection->omission_candidates.end());
  CHECK(cands == std::set<std::string>{"05", "14", "23"});
  CHECK(r.selection->omitted == std::vector<std::string>{"05"});
}

TEST_CASE("worked example with the alternative omission") {
  CaseInput in = case_from_tableau(worked_example());
  in.omit_override = "23";
  CaseResult r = prove_case(in);
  check_structure(r, 13);
  auto pl = places(r);
  CHECK(pl["55"] == "bridge:1");
  CHECK(pl["45"] == "bridge:1");
  const char* loops[] = {"35", "25", "44", "34", "33", "15", "14", "22", "13", "04"};
  for (int k = 1; k <= 10; ++k) CHECK(pl[loops[k - 1]] == "loop:" + std::to_string(k));
  CHECK(pl["24"] == "bridge:7");
  CHECK(pl["05"] == "bridge:8");
  CHECK(pl["01"] == "bridge:14");
  CHECK(pl["00"] == "bridge:14");

  CaseInput bad = case_from_tableau(worked_example());
  bad.omit_override = "33";
  CaseResult rb = prove_case(bad);
  CHECK_FALSE(rb.ok);
  CHECK(rb.error.find("select") != std::string::npos);
}

TEST_CASE("permissibility on a loop") {
  SlopeTable st = slopes_from_tableau(worked_example());
  CaseResult r = prove_case(case_from_tableau(worked_example()));
  REQUIRE(r.ok);
  for (const auto& c : r.selection->retained) {
    for (int k = 1; k <= 13; ++k) {
      int in = slope_in(c.f, k), out = slope_out(c.f, k), s = r.plan->sigma(k);
      PermKind p = permissible(c.f, k, *r.plan);
      CHECK((p != PermKind::NotPermissible) == (in <= s && s <= out));
      if (p != PermKind::NotPermissible) CHECK(is_departing(p) == (out > s));
    }
  }
  // On the lingering loop nothing departs.
  for (const auto& c : r.selection->retained) CHECK_FALSE(is_departing(permissible(c.f, 6, *r.plan)));
}

TEST_CASE("sampled genus 13 tableaux certify") {
  auto all = enumerate_tableaux(13);
  for (std::size_t i = 0; i < all.size(); i += 97) {
    CAPTURE(i);
    check_structure(prove_case(case_from_tableau(all[i])), 13);
  }
}

TEST_CASE("genus 11 and 12 cases use the first bridge for the high slopes") {
  for (int g : {11, 12}) {
    auto all = enumerate_tableaux(g);
    for (std::size_t i = 0; i < all.size(); i += 211) {
      CAPTURE(g);
      CAPTURE(i);
      CaseResult r = prove_case(case_from_tableau(all[i]));
      check_structure(r, g);
      int first = 0;
      for (const auto& a : r.build->log)
        if (a.place == "bridge:" + std::to_string(14 - g)) ++first;
      CHECK(first == 15 - g);
    }
  }
}

TEST_CASE("results are deterministic") {
  auto all = enumerate_tableaux(13);
  CaseResult a = prove_case(case_from_tableau(all[500])), b = prove_case(case_from_tableau(all[500]));
  CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("ramified families") {
  auto right = family_cases(Family::RamifiedRight);
  auto left = family_cases(Family::RamifiedLeft);
  CHECK(right.size() == 1287);
  CHECK(left.size() == 1287);
  for (std::size_t i = 0; i < right.size(); i += 181) {
    CAPTURE(right[i].name);
    CaseResult r = prove_case(right[i].input);
    CHECK(r.ok);
    CHECK(r.profile->ramified_right);
  }
  for (std::size_t i = 0; i < left.size(); i += 181) {
    CAPTURE(left[i].name);
    CaseResult r = prove_case(left[i].input);
    CHECK(r.ok);
    CHECK(r.profile->ramified_left);
  }
}

TEST_CASE("switching cases either certify through T or report the stage") {
  auto cases = family_cases(Family::Switching);
  REQUIRE_FALSE(cases.empty());
  int ok = 0;
  for (std::size_t i = 0; i < cases.size(); i += 400) {
    CAPTURE(cases[i].name);
    CaseResult r = prove_case(cases[i].input);
    if (r.ok) {
      ++ok;
      REQUIRE(r.switching);
      CHECK(r.switching->theta_matches);
      CHECK(r.switching->certificate.ok);
      CHECK(r.switching->t_labels.size() == 20);
    } else {
      CHECK_FALSE(r.error.empty());
    }
  }
  CHECK(ok > 0);
}

TEST_CASE("input errors do not escalate") {
  CaseInput in = case_from_tableau(worked_example());
  in.omit_override = "99";
  CaseResult r = prove_case(in);
  CHECK_FALSE(r.ok);
  CHECK(r.escalations == 0);
}
