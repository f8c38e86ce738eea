#pragma once

#include <vector>

#include "artifact/divisors.hpp"
#include "artifact/graded.hpp"

namespace g13 {

// Cohomology of X × W on a genus-13 curve X with W = W^5_16(X), truncated at
// degree 14. Generators: γ, η, θ, y1, c1..c7 (formal Chern classes of the
// tautological rank-6 bundle), and κ_Z, κ_Y for the kernel bundles on the two
// test surfaces. Relations η² = ηγ = 0, γ² = −2ηθ.
RingPtr jac_ring();

enum class Surface { Z, Y };

GradedElement jac_gen(const char* name);
// Formal c_i; c_0 = 1, i ≤ 7.
GradedElement c_symbol(int i);
// c_i expressed in θ and y1: θ^i/i! − θ^{i−1}/(i−1)!·y1 for 1 ≤ i ≤ 6,
// c_0 = 1, c_7 = 0. Throws std::out_of_range outside 0..7.
GradedElement chern_M(int i);

struct SurfaceContext {
  Surface which;
  GradedElement total_chern;   // c_tot of the virtual bundle whose degree-10 part is the surface
  GradedElement cls;           // surface class, degree 10
  GradedElement kappa_linear;  // κ·ξ = kappa_linear·ξ, degree 12
  GradedElement kappa_square;  // κ², degree 14
  GradedElement shift;         // X in c1(U) = X + κ
  const char* kappa;           // generator name
};

SurfaceContext surface_context(Surface which);
GradedElement surface_class(Surface which);

struct RankTwoCherns {
  GradedElement c1A, c2A, c1B, c2B;
};
RankTwoCherns chern_A2B2();

// Eliminates κ: the κ-free part is multiplied by the surface class, κ·P by
// P·kappa_linear and κ²·c by c·kappa_square. Throws on κ-degree > 2 or a κ
// symbol from the other surface.
GradedElement kernel_reduce(const GradedElement& x, const SurfaceContext& ctx);

// Coefficient of η in a top-degree class, as a polynomial in θ and c_i.
GradedElement eta_coefficient(const GradedElement& top_class);

// Substitutes c_i → chern_M(i).
GradedElement substitute_chern(const GradedElement& x);

// θ^i·y1^{6−i} ↦ 12!/(12−i)! on a degree-12 polynomial in θ, y1.
Rational evaluate_theta_y(const GradedElement& x);

// Integral over X × W of a degree-14 class. Only η-linear monomials
// survive: γ-linear ones push forward to zero and pure W-monomials of
// degree 14 exceed dim W.
Rational evaluate_top(const GradedElement& x);

struct PipelineResult {
  Surface which;
  GradedElement integrand;  // c2-expression before κ elimination
  GradedElement top_class;  // after kernel_reduce
  GradedElement eta_poly;   // η-coefficient in θ, c_i
  GradedElement theta_y;    // after substitute_chern
  Rational total;           // 259314 on Z, 42141 on Y
  Rational value;           // b1, or b0
};

// 20c1²(E) + 8c2(E) − 7c1(E)c1(F) + c1²(F) − c2(F) with E = M and
// c(F) determined by the rank-two bundle and c1(U) = X + κ.
GradedElement c2_integrand(const SurfaceContext& ctx, const GradedElement& c1_rank2,
                           const GradedElement& c2_rank2);

PipelineResult compute_b1();
PipelineResult compute_b0(const Rational& b1);

struct VirtualClass {
  Rational a, b0, b1;
  DivClass cls;  // a·λ − b0·δ0 − b1·δ1, with δ2..δ6 unknown but b_i ≥ b0 assumed
  Rational slope;
  // (6i+8)b0 − (i+1)a for i = 2..6, reported only.
  std::vector<Rational> positivity_quantities;
};
VirtualClass compute_virtual_class(const Rational& b0, const Rational& b1);

}  // namespace g13
