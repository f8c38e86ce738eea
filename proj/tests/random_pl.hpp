#pragma once

#include <random>

#include "artifact/metric_graph.hpp"

namespace g13::test_support {

// Genus 11 chain with small, uneven edge lengths.
inline GraphPtr small_graph() {
  std::map<int, Rational> top, bottom, bridge;
  for (int k = 3; k <= 13; ++k) {
    top[k] = make_rational(3 + k % 4, 2);
    bottom[k] = make_rational(5 + k % 3, 3);
  }
  for (int k = 3; k <= 14; ++k) bridge[k] = make_rational(7 + k % 5, 2);
  return std::make_shared<const ChainGraph>(ChainGraph::custom(11, top, bottom, bridge, std::nullopt));
}

// Segments on [0, len] whose total change is delta: a few random pieces,
// then two slopes a < delta'/R < b that finish the edge exactly.
inline std::vector<Segment> random_edge(const Rational& len, const Rational& delta, std::mt19937& rng) {
  std::uniform_int_distribution<int> slope(-3, 3), count(0, 2), frac(1, 15), wiggle(0, 1);
  std::vector<Segment> out;
  Rational x = 0, change = 0;
  int prefix = count(rng);
  for (int i = 0; i < prefix; ++i) {
    Rational step = len * make_rational(frac(rng), 64);
    int s = slope(rng);
    out.push_back({x, s});
    x += step;
    change += s * step;
  }
  Rational rest = len - x, need = delta - change, avg = need / rest;
  Integer fl, cl;
  mpz_fdiv_q(fl.get_mpz_t(), avg.get_num_mpz_t(), avg.get_den_mpz_t());
  mpz_cdiv_q(cl.get_mpz_t(), avg.get_num_mpz_t(), avg.get_den_mpz_t());
  long a = cl.get_si() - 1 - wiggle(rng), b = fl.get_si() + 1 + wiggle(rng);
  Rational with_a = (b * rest - need) / (b - a);
  out.push_back({x, static_cast<int>(a)});
  out.push_back({x + with_a, static_cast<int>(b)});
  return out;
}

inline PLFunction random_pl(const GraphPtr& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> slope(-4, 4), val(-40, 40);
  PLFunction::Pieces pieces(g->edges().size());
  for (std::size_t e = 0; e < g->edges().size(); ++e) {
    EdgeId id = g->edges()[e];
    const Rational& len = g->length(id);
    if (id.kind == EdgeKind::Bridge) {
      pieces[e] = random_edge(len, slope(rng) * len + make_rational(val(rng), 3), rng);
    } else if (id.kind == EdgeKind::Top) {
      Rational delta = make_rational(val(rng), 5);
      pieces[e] = random_edge(len, delta, rng);
      pieces[e + 1] = random_edge(g->bottom(id.k), delta, rng);
    }
  }
  return PLFunction(g, make_rational(val(rng), 2), pieces);
}

}  // namespace g13::test_support
