#include <doctest.h>

#include "artifact/jacobian.hpp"
#include "artifact/reports.hpp"

using namespace g13;

namespace {

// i!·C(12, i) by plain integer arithmetic, independent of the library.
long falling_factorial_12(int i) {
  long p = 1;
  for (int k = 0; k < i; ++k) p *= 12 - k;
  return p;
}

}  // namespace

TEST_CASE("top products match the factorial oracle") {
  GradedElement eta = jac_gen("eta"), theta = jac_gen("theta"), y1 = jac_gen("y1");
  for (int i = 0; i <= 6; ++i) {
    GradedElement m = eta * power(theta, i) * power(y1, 6 - i);
    CHECK(evaluate_top(m) == falling_factorial_12(i));
    CHECK(evaluate_theta_y(power(theta, i) * power(y1, 6 - i)) == falling_factorial_12(i));
  }
}

TEST_CASE("c_i in theta and y1") {
  GradedElement theta = jac_gen("theta"), y1 = jac_gen("y1");
  CHECK(chern_M(0) == GradedElement(jac_ring(), Rational(1)));
  CHECK(chern_M(1) == theta - y1);
  CHECK(chern_M(2) == power(theta, 2) * make_rational(1, 2) - theta * y1);
  CHECK(chern_M(7).is_zero());
  CHECK_THROWS_AS(chern_M(8), std::out_of_range);
}

TEST_CASE("b1 pipeline") {
  PipelineResult z = compute_b1();
  CHECK(z.total == 259314);
  CHECK(z.value == 11787);
  CHECK(z.eta_poly == golden::eta_poly_z());
  CHECK(theta_y_coefficients(z.theta_y) == golden::theta_y_z());
  // Only η-linear monomials survive in the top degree.
  GradedElement eta = jac_gen("eta");
  GradedElement eta_part = eta * z.eta_poly;
  CHECK(evaluate_top(z.top_class - eta_part) == 0);
}

TEST_CASE("b0 pipeline and the virtual class") {
  PipelineResult z = compute_b1();
  PipelineResult y = compute_b0(z.value);
  CHECK(y.total == 42141);
  CHECK(y.value == 2247);
  CHECK(y.eta_poly == golden::eta_poly_y());
  CHECK(theta_y_coefficients(y.theta_y) == golden::theta_y_y());

  VirtualClass v = compute_virtual_class(y.value, z.value);
  CHECK(v.a == 15177);
  CHECK(v.cls.at("lambda") == 3 * 5059);
  CHECK(v.cls.at("delta0") == -3 * 749);
  CHECK(v.cls.at("delta1") == -3 * 3929);
  CHECK_FALSE(v.cls.known("delta2"));
  CHECK(v.slope == make_rational(5059, 749));
  CHECK(v.slope < make_rational(88, 13));
  // The elliptic-tail relation a − 12b0 + b1 = 0.
  CHECK(v.a - 12 * v.b0 + v.b1 == 0);
  REQUIRE(v.positivity_quantities.size() == 5);
  CHECK(v.positivity_quantities[0] == 20 * 2247 - 3 * 15177);
}

TEST_CASE("kernel_reduce is linear") {
  SurfaceContext ctx = surface_context(Surface::Z);
  GradedElement k = jac_gen(ctx.kappa), theta = jac_gen("theta"), eta = jac_gen("eta");
  GradedElement p = k * theta, q = eta * theta * c_symbol(1);
  GradedElement lhs = kernel_reduce(p * Rational(3) + q, ctx);
  GradedElement rhs = kernel_reduce(p, ctx) * Rational(3) + kernel_reduce(q, ctx);
  CHECK(lhs == rhs);
  CHECK_THROWS(kernel_reduce(power(k, 3), ctx));
}
