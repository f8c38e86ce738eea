#include <doctest.h>

#include <random>

#include "artifact/independence.hpp"
#include "artifact/metric_graph.hpp"
#include "random_pl.hpp"

using namespace g13;

TEST_CASE("admissible lengths follow the scale tower") {
  ChainGraph g = ChainGraph::admissible(13, 10);
  CHECK(g.bottom(13) == 1);
  for (int k = 1; k <= 13; ++k) {
    if (k < 13) CHECK(g.bottom(k) >= 10 * g.top(k + 1));
    CHECK(g.top(k) >= 10 * g.bottom(k));
    CHECK(g.bridge(k + 1) >= 10 * g.top(k));
    CHECK(g.bridge(k) >= 10 * g.bridge(k + 1));
  }
  CHECK(g.edges().size() == 14 + 2 * 13);
  CHECK_THROWS(ChainGraph::custom(13, {}, {}, {}, std::nullopt));
}

TEST_CASE("points have one canonical form") {
  ChainGraph g = ChainGraph::admissible(12, 10);
  CHECK(canonical(g, {{EdgeKind::Bottom, 5}, Rational(0)}) == vertex_v(g, 5));
  CHECK(canonical(g, {{EdgeKind::Bottom, 5}, g.bottom(5)}) == vertex_w(g, 5));
  CHECK(canonical(g, {{EdgeKind::Bridge, 6}, Rational(0)}) == vertex_w(g, 5));
  CHECK(canonical(g, {{EdgeKind::Bridge, 6}, g.bridge(6)}) == vertex_v(g, 6));
  CHECK_THROWS_AS(canonical(g, {{EdgeKind::Top, 5}, Rational(-1)}), std::out_of_range);
}

TEST_CASE("a loop that does not close up is rejected") {
  auto g = test_support::small_graph();
  PLFunction::Pieces p(g->edges().size(), std::vector<Segment>{{Rational(0), 0}});
  p[g->edge_index({EdgeKind::Top, 12})] = {{Rational(0), 1}};
  CHECK_THROWS_AS(PLFunction(g, 0, p), std::invalid_argument);
}

TEST_CASE("divisors of random PL functions: degree zero and the sum rule") {
  std::mt19937 rng(20240611);
  auto g = test_support::small_graph();
  for (int trial = 0; trial < 1000; ++trial) {
    PLFunction f = test_support::random_pl(g, rng), h = test_support::random_pl(g, rng);
    GraphDivisor df = pl_divisor(f), dh = pl_divisor(h);
    CHECK(df.degree() == 0);
    CHECK(pl_divisor(f + h) == df + dh);
    CHECK(pl_divisor(f + Rational(7, 3)) == df);
    CHECK(pl_divisor(-f) == df * -1);
    CHECK(in_linear_system(df * -1, f));
  }
}

TEST_CASE("divisor at vertices from the slopes on the incident edges") {
  std::mt19937 rng(5);
  auto g = test_support::small_graph();
  for (int trial = 0; trial < 200; ++trial) {
    PLFunction f = test_support::random_pl(g, rng);
    GraphDivisor d = pl_divisor(f);
    for (int k = g->first_loop(); k <= 13; ++k) {
      int at_v = f.last_slope({EdgeKind::Bridge, k}) - f.first_slope({EdgeKind::Top, k}) -
                 f.first_slope({EdgeKind::Bottom, k});
      int at_w = f.last_slope({EdgeKind::Top, k}) + f.last_slope({EdgeKind::Bottom, k}) -
                 f.first_slope({EdgeKind::Bridge, k + 1});
      CHECK(d.at(*g, vertex_v(*g, k)) == at_v);
      CHECK(d.at(*g, vertex_w(*g, k)) == at_w);
    }
  }
}

TEST_CASE("min combination agrees pointwise") {
  std::mt19937 rng(11);
  auto g = test_support::small_graph();
  std::uniform_int_distribution<int> pick(0, 999);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PLFunction> fs;
    std::vector<Rational> b;
    for (int i = 0; i < 4; ++i) {
      fs.push_back(test_support::random_pl(g, rng));
      b.push_back(make_rational(pick(rng) - 500, 7));
    }
    PLFunction m = min_combination(fs, b);
    for (std::size_t e = 0; e < g->edges().size(); ++e) {
      const Rational& len = g->length(g->edges()[e]);
      for (int s = 0; s <= 8; ++s) {
        Rational x = len * make_rational(s, 8);
        Rational want = fs[0].value_at(e, x) + b[0];
        for (int i = 1; i < 4; ++i) want = std::min(want, Rational(fs[i].value_at(e, x) + b[i]));
        CHECK(m.value_at(e, x) == want);
      }
    }
  }
}

TEST_CASE("best approximation of a single function") {
  std::mt19937 rng(3);
  auto g = test_support::small_graph();
  PLFunction theta = test_support::random_pl(g, rng);
  CHECK(best_approximation(theta, {theta}).same_as(theta));
  CHECK(best_approximation(theta, {theta + Rational(5)}).same_as(theta));
  CHECK(approximation_shifts(theta, {theta + Rational(5)}) == std::vector<Rational>{Rational(5)});
}

TEST_CASE("certificate: distinct slopes on a bridge are independent, equal ones are not") {
  auto g = test_support::small_graph();
  auto ramp = [&](int slope) {
    PLFunction::Pieces p(g->edges().size(), std::vector<Segment>{{Rational(0), 0}});
    p[0] = {{Rational(0), slope}};
    return PLFunction(g, 0, p);
  };
  const Rational& n = g->bridge(g->first_loop());
  // 0, n/3 − x and n − 2x each win on a third of the first bridge.
  std::vector<PLFunction> psi{ramp(0), ramp(-1), ramp(-2)};
  IndependenceCertificate c = certify_independence(psi, {Rational(0), n / 3, n});
  CHECK(c.ok);
  CHECK(c.min_margin > 0);
  CHECK(c.entries.size() == 3);

  IndependenceCertificate bad = certify_independence({ramp(1), ramp(1)}, {Rational(0), Rational(0)});
  CHECK_FALSE(bad.ok);
  CHECK(bad.failures.size() == 2);
}
