#include <doctest.h>

#include "artifact/hecke.hpp"
#include "artifact/reports.hpp"

using namespace g13;

TEST_CASE("Bernoulli numbers") {
  auto b = bernoulli_table(24);
  CHECK(b[0] == 1);
  for (int q = 3; q <= 23; q += 2) CHECK(b[q] == 0);
  auto want = golden::bernoulli_even();
  for (int q = 2; q <= 24; q += 2) CHECK(b[q] == want[q / 2 - 1]);
}

TEST_CASE("Thaddeus numbers: domain and vanishing") {
  // q = m + p + 1 − 13 is always even on valid degrees; q < 0 gives zero.
  CHECK(thaddeus_number(0, 18, 0) == 0);
  CHECK(thaddeus_number(3, 15, 1) == 0);
  CHECK_THROWS_AS(thaddeus_number(1, 1, 1), std::invalid_argument);  // wrong degree
  CHECK_THROWS_AS(thaddeus_number(0, 0, 14), std::invalid_argument);  // p > g
}

TEST_CASE("c_n satisfy the four-term recursion") {
  auto cs = c_sequence(14);
  for (int n = 1; n + 4 <= 14; ++n) CHECK(recursion_residual(cs, n).is_zero());
}

TEST_CASE("h multiplication") {
  GradedElement h = verlinde_gen("h"), a = verlinde_gen("alpha"), b = verlinde_gen("beta");
  // h² = αh − (α² − β)/4.
  CHECK(h_mul(h, h) == a * h - (a * a - b) * make_rational(1, 4));
  VerlindeElement s = split_h(a * h + b);
  CHECK(s.p == b);
  CHECK(s.q == a);
  CHECK(combine(s) == a * h + b);
}

TEST_CASE("count of bundles") {
  BundleCount bc = count_bundles();
  CHECK(bc.integral_f == -6);
  CHECK(bc.integral_alpha_u == 6);
  CHECK(bc.integral_h_det == bc.integral_f + bc.integral_alpha_u);
  CHECK(bc.count == 3);
}

TEST_CASE("closed form for powers of h") {
  PowersOfHCheck pc = check_powers_of_h(24);
  CHECK(pc.derived_first_failure == 0);
  CHECK(pc.variant_first_failure == 2);
}

TEST_CASE("Porteous count") {
  PorteousCount p = porteous_resonance_count();
  CHECK(p.porteous == 64);
  CHECK(p.excess == 10 * 17 + 2 * 17 - 7 * 17 - (2 * 13 - 2));
  CHECK(p.difference == p.porteous - p.excess);
  CHECK(p.difference == 3);
}
