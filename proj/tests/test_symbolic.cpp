#include <doctest.h>

#include <random>

#include "artifact/graded.hpp"
#include "artifact/rational.hpp"

using namespace g13;

TEST_CASE("rationals stay canonical") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(make_rational(10, 5)) == "2");
  CHECK(parse_rational("-14/21") == make_rational(-2, 3));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(is_integer(make_rational(8, 4)));
  CHECK_FALSE(is_integer(make_rational(1, 3)));
  CHECK(pow(make_rational(-2, 3), 3) == make_rational(-8, 27));
}

TEST_CASE("factorial and binomial against direct products") {
  for (unsigned n = 0; n <= 20; ++n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    CHECK(factorial(n) == f);
    for (unsigned k = 0; k <= n; ++k) CHECK(binomial(n, k) * factorial(k) * factorial(n - k) == f);
  }
}

namespace {

// Q[x, y]/(x² − xy), x and y in degree 2, cut off above degree 8.
RingPtr small_ring() {
  static RingPtr r = [] {
    Monomial x2{2, 0}, xy{1, 1};
    return GradedRing::create({{"x", 2}, {"y", 2}}, {{x2, {{xy, Rational(1)}}}}, 8);
  }();
  return r;
}

GradedElement random_element(std::mt19937& rng) {
  RingPtr r = small_ring();
  std::uniform_int_distribution<int> exp(0, 4), coef(-5, 5);
  Terms t;
  for (int i = 0; i < 4; ++i) t[Monomial{static_cast<std::uint8_t>(exp(rng)), static_cast<std::uint8_t>(exp(rng))}] += coef(rng);
  return GradedElement::from_terms(r, t);
}

}  // namespace

TEST_CASE("graded ring reduction and truncation") {
  RingPtr r = small_ring();
  GradedElement x = GradedElement::generator(r, "x"), y = GradedElement::generator(r, "y");
  CHECK(x * x == x * y);
  CHECK(power(x, 3) == x * y * y);
  CHECK(power(y, 5).is_zero());  // degree 10 > 8
  CHECK((x * y).degree() == 4);
  CHECK(graded_part(x + x * y, 2) == x);
}

TEST_CASE("graded ring axioms on random elements") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    GradedElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(rereduce(a) == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("series inverse") {
  RingPtr r = small_ring();
  GradedElement one(r, Rational(1));
  GradedElement u = one + GradedElement::generator(r, "x") * Rational(3) - GradedElement::generator(r, "y");
  CHECK(series_inverse(u) * u == one);
}
