#include <doctest.h>

#include "artifact/divisors.hpp"
#include "artifact/jacobian.hpp"

using namespace g13;

namespace {

DivClass virtual_class() { return compute_virtual_class(2247, 11787).cls; }

}  // namespace

TEST_CASE("slope needs every boundary coefficient or a bound") {
  DivClass c = DivClass::m13();
  c.set("lambda", 10).set("delta0", -2);
  for (int i = 1; i <= 6; ++i) c.set_unknown("delta" + std::to_string(i));
  CHECK_THROWS_AS(slope(c), std::domain_error);
  for (int i = 1; i <= 6; ++i) c.set_unknown("delta" + std::to_string(i), Rational(2));
  CHECK(slope(c) == 5);
  c.set_unknown("delta3", Rational(1));
  CHECK_THROWS_AS(slope(c), std::domain_error);
}

TEST_CASE("slope is invariant under positive scaling") {
  DivClass v = virtual_class();
  for (long k : {1L, 2L, 7L}) CHECK(slope(v * make_rational(k, 3)) == slope(v));
}

TEST_CASE("unknown coefficients propagate") {
  DivClass a = DivClass::m13(), b = DivClass::m13();
  a.set("lambda", 1).set_unknown("delta4");
  b.set("lambda", 2).set("delta4", -1);
  DivClass s = a + b;
  CHECK(s.at("lambda") == 3);
  CHECK_FALSE(s.known("delta4"));
  CHECK_THROWS_AS(s.at("delta4"), std::logic_error);
}

TEST_CASE("gamma pushforward solves its defining relation") {
  GammaPushforward g = solve_gamma_pushforward(virtual_class());
  CHECK(g.gamma_push.at("lambda") == make_rational(11288, 143));
  CHECK(g.gamma_push.at("delta0") == make_rational(-1582, 143));
  // 132·(−(9/4)·3·λ + (13/8)·ϑ⋆γ) = [D13] + 18(48λ − 7δ0) on λ and δ0.
  for (const char* n : {"lambda", "delta0"}) {
    Rational lhs = 132 * ((std::string(n) == "lambda" ? make_rational(-27, 4) : Rational(0)) +
                          make_rational(13, 8) * g.gamma_push.at(n));
    Rational rhs = virtual_class().at(n) + 18 * (std::string(n) == "lambda" ? 48 : -7);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("MP and Theta classes") {
  GammaPushforward g = solve_gamma_pushforward(virtual_class());
  DivClass mp = mp_class(g.gamma_push);
  CHECK(mp.at("lambda") == make_rational(8218, 143));
  CHECK(mp.at("delta0") == make_rational(-1220, 143));
  CHECK(slope(mp) == make_rational(4109, 610));
  CHECK(slope(mp) < make_rational(88, 13));

  DivClass th = theta_class_r13(g.gamma_push);
  CHECK(th.at("lambda") == make_rational(10430, 143));
  CHECK(th.at("delta0'") == make_rational(-1582, 143));
  CHECK(th.at("delta0''") == th.at("delta0'"));
  CHECK(th.at("delta0ram") == make_rational(-5899, 286));
}

TEST_CASE("pullback to the Prym moduli space") {
  DivClass d = DivClass::m13();
  d.set("lambda", 5).set("delta0", -1);
  DivClass p = pullback_to_r13(d);
  CHECK(p.at("delta0'") == -1);
  CHECK(p.at("delta0''") == -1);
  CHECK(p.at("delta0ram") == -2);
}

TEST_CASE("Kodaira and M13,9 checks") {
  GammaPushforward g = solve_gamma_pushforward(virtual_class());
  KodairaReport k = kodaira_check_r13(theta_class_r13(g.gamma_push));
  CHECK(k.lambda_coeff == make_rational(4362, 337));
  CHECK(k.lambda_below_13);
  REQUIRE(k.boundary_bounds.size() == 6);
  for (auto& b : k.boundary_bounds) CHECK(b >= 3);
  CHECK(k.pullback_identity_ok);

  M13_9Report m = m13_9_check(make_rational(4109, 610));
  CHECK(m.lhs == make_rational(4109, 305) - make_rational(9, 17));
  CHECK(m.holds);
  CHECK(m.margin == 13 - m.lhs);
}
