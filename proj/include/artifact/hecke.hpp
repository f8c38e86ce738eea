#pragma once

#include <map>
#include <vector>

#include "artifact/graded.hpp"

namespace g13 {

// Q[α, β, γ][h]/(h² − αh + (α² − β)/4) in cohomological degrees 2, 4, 6, 2,
// truncated above complex degree 37 (the top of the P¹-bundle over the
// rank-2 moduli space of a genus-13 curve).
RingPtr verlinde_ring();
GradedElement verlinde_gen(const char* name);  // "h", "alpha", "beta", "gamma"

// p + h·q with p, q free of h.
struct VerlindeElement {
  GradedElement p, q;
};
VerlindeElement split_h(const GradedElement& x);
GradedElement combine(const VerlindeElement& v);

GradedElement h_mul(const GradedElement& a, const GradedElement& b);

// c_0..c_n from the initial values and the four-term recursion.
std::vector<GradedElement> c_sequence(int n);

// (n+4)c_{n+4} − ((n+2)/2)βc_{n+2} + (β/4)²·n·c_n − h·c_{n+3} + (βh/4 + γ/2)c_{n+1};
// zero for every n ≥ 1 when cs comes from c_sequence.
GradedElement recursion_residual(const std::vector<GradedElement>& cs, int n);

// Entry (row, col) of the 8×8 Lagrangian degeneracy matrix, 0-based;
// returns the c-index or −1 for a zero entry.
int bp8_index(int row, int col);

// Division-free Laplace expansion, memoized on column subsets.
GradedElement bp8_determinant(const std::vector<GradedElement>& cs);

// Bernoulli numbers B_0..B_n (B_1 = −1/2 convention, unused here).
std::vector<Rational> bernoulli_table(int n);

// Top intersection ∫ α^m β^n γ^p on SU_X(2, ω(p)), g = 13. Returns 0 when
// q = m + p + 1 − g is negative, equal to 1, or odd. Throws
// std::invalid_argument when m + 2n + 3p ≠ 3g − 3 or p > g.
Rational thaddeus_number(int m, int n, int p);

// ∫_SU of an h-free class; only the complex-degree-36 part contributes.
Rational integrate_su(const GradedElement& f);
// ∫_P (p + h·q) = ∫_SU q.
Rational integrate_p(const GradedElement& x);

struct BundleCount {
  GradedElement f, u;        // determinant = f + h·u
  Rational integral_f;       // ∫_SU f
  Rational integral_alpha_u; // ∫_SU αu
  Rational integral_h_det;   // ∫_P h·(f + h·u) = ∫f + ∫αu
  Integer count;             // |½∫f|
  const char* convention;
};
BundleCount count_bundles();

// h^n·√β(α² − β) = N₊·((α+√β)/2)^n + N₋·((α−√β)/2)^n for n = 2..max_n, with
// √β a formal root. The derived numerators are N± = ±(α² − β)(h − (α∓√β)/2).
// The variant numerators h(∓2α ± 2h)√β + α² − 2αh + β are not homogeneous;
// they are checked too, for the record. A first-failure of 0 means all n agree.
struct PowersOfHCheck {
  int max_n;
  int derived_first_failure;
  int variant_first_failure;
};
PowersOfHCheck check_powers_of_h(int max_n);

struct PorteousCount {
  Integer porteous;  // [1/(1+h)^7 · 1/c_tot(Λ²M)]_6 on P⁶
  Integer excess;    // 10d + 2d − 7d − (2g − 2)
  Integer difference;
};
PorteousCount porteous_resonance_count();

}  // namespace g13
