#include <doctest.h>

#include <set>

#include "artifact/slopes.hpp"

using namespace g13;

namespace {

// Standard 2×6 fillings by the hook length formula.
long hook_count() {
  long num = 1, den = 1;
  for (int i = 2; i <= 12; ++i) num *= i;
  for (int c = 0; c < 6; ++c) den *= (6 - c + 1) * (6 - c);  // hooks in the top and bottom rows
  return num / den;
}

Tableau worked_example() { return {{1, 3, 4, 8, 9, 10}, {2, 5, 7, 11, 12, 13}, 6, 13}; }

}  // namespace

TEST_CASE("tableau counts") {
  CHECK(hook_count() == 132);
  CHECK(enumerate_tableaux(13).size() == 13 * 132);
  CHECK(enumerate_tableaux(12).size() == 12 * 132);
  CHECK(enumerate_tableaux(11).size() == 11 * 132);
}

TEST_CASE("enumerated tableaux are standard and distinct") {
  auto all = enumerate_tableaux(13);
  std::set<std::pair<std::array<int, 6>, std::pair<std::array<int, 6>, int>>> seen;
  for (const auto& t : all) {
    CHECK_NOTHROW(validate(t));
    seen.insert({t.top, {t.bottom, t.lingering}});
  }
  CHECK(seen.size() == all.size());
}

TEST_CASE("nonstandard tableaux are rejected") {
  Tableau t = worked_example();
  std::swap(t.top[0], t.bottom[0]);
  CHECK_THROWS_AS(validate(t), std::invalid_argument);
  t = worked_example();
  t.lingering = 5;  // 5 is used
  CHECK_THROWS_AS(validate(t), std::invalid_argument);
  CHECK_THROWS_AS(tableau_from_json(nlohmann::json{{"top", {1, 2}}}), std::invalid_argument);
}

TEST_CASE("slopes of the worked example") {
  SlopeTable st = slopes_from_tableau(worked_example());
  CHECK(st.in(1) == Slopes{-2, -1, 0, 1, 2, 3});
  CHECK(st.out(1) == Slopes{-2, -1, 0, 1, 2, 4});
  CHECK(st.out(5) == Slopes{-2, -1, 0, 2, 4, 5});
  CHECK(st.out(6) == st.in(6));
  CHECK(st.out(10) == Slopes{-1, 0, 1, 3, 4, 5});
  CHECK(st.out(13) == Slopes{0, 1, 2, 3, 4, 5});
  for (int k = 1; k <= 13; ++k) CHECK(st.in(k + 1) == st.out(k));

  LoopProfile p = classify(st);
  CHECK(p.special == ItemKind::Lingering);
  CHECK(p.where == 6);
  CHECK_FALSE(p.ramified_left);
  CHECK_FALSE(p.ramified_right);
}

TEST_CASE("every index rises once per symbol") {
  for (const auto& t : enumerate_tableaux(13)) {
    SlopeTable st = slopes_from_tableau(t);
    int rises = 0;
    for (int k = 1; k <= 13; ++k)
      for (int i = 0; i < 6; ++i) rises += st.out(k)[i] - st.in(k)[i];
    CHECK(rises == 12);
    CHECK(tau(st, 13) == 12);
  }
}

TEST_CASE("step tables keep rows increasing") {
  Slopes start{-2, -1, 0, 1, 2, 3};
  CHECK_THROWS(slopes_from_steps(13, start, {{4, Slopes{0, 1, 0, 0, 0, 0}}}, {}));
  SlopeTable st = slopes_from_steps(13, start, {{4, Slopes{0, 0, 0, 0, 0, 1}}}, {});
  CHECK(st.out(4) == Slopes{-2, -1, 0, 1, 2, 4});
}

TEST_CASE("chips and the functions phi_i") {
  for (const Tableau& t : {worked_example(), enumerate_tableaux(11).at(300), enumerate_tableaux(12).at(1000)}) {
    SlopeTable st = slopes_from_tableau(t);
    auto g = std::make_shared<const ChainGraph>(ChainGraph::admissible(t.genus, 100));
    ChipSolution chips = chip_solve(*g, st);
    CHECK(chips.divisor.effective());
    CHECK(chips.divisor.degree() == 16);
    for (int i = 0; i < 6; ++i) {
      PLFunction phi = build_phi(i, g, st, chips);
      CHECK(in_linear_system(chips.divisor, phi));
      for (int k = g->first_loop(); k <= 13; ++k) {
        CHECK(phi.last_slope({EdgeKind::Bridge, k}) == st.in(k)[i]);
        CHECK(phi.first_slope({EdgeKind::Bridge, k + 1}) == st.out(k)[i]);
      }
    }
  }
}
