#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "artifact/rational.hpp"

namespace g13 {

// A divisor class a·λ − Σ b_i·δ_i stored by its coefficients over a named
// basis. Coefficients may be unknown (elided in the source classes); an
// unknown boundary coefficient can carry a hypothesis b ≥ bound, which slope()
// uses instead of inventing a value.
class DivClass {
 public:
  explicit DivClass(std::vector<std::string> basis);

  // λ, δ0, …, δ6 on the moduli of genus-13 curves.
  static DivClass m13();
  // λ, δ0', δ0'', δ0^ram, δ1..δ12, δ1:12..δ6:7 on the moduli of Prym curves.
  static DivClass r13();

  const std::vector<std::string>& basis() const { return basis_; }
  std::size_t index_of(const std::string& name) const;

  DivClass& set(const std::string& name, const Rational& value);
  DivClass& set_unknown(const std::string& name, std::optional<Rational> b_lower_bound = {});

  bool known(const std::string& name) const;
  // Throws std::logic_error if the coefficient is unknown.
  Rational at(const std::string& name) const;
  std::optional<Rational> b_lower_bound(const std::string& name) const;

  // Linear operations; a coefficient is known in the result only if it is
  // known in every operand that contributes to it.
  DivClass operator+(const DivClass& o) const;
  DivClass operator-(const DivClass& o) const;
  DivClass operator*(const Rational& c) const;

  bool operator==(const DivClass& o) const;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  struct Entry {
    std::optional<Rational> value;
    std::optional<Rational> b_bound;
  };
  void check_basis(const DivClass& o) const;
  std::vector<std::string> basis_;
  std::vector<Entry> coef_;
};

// a / min_i b_i for a class a·λ − Σ b_i δ_i. Every boundary coefficient must be
// known with b_i > 0, or unknown with a hypothesis b_i ≥ bound where bound is
// at least the known minimum. Throws std::domain_error otherwise.
Rational slope(const DivClass& c);

// Pullback along the forgetful map R̄13 → M̄13 of a class in λ, δ0:
// π*δ0 = δ0' + δ0'' + 2δ0^ram.
DivClass pullback_to_r13(const DivClass& m13_class);

struct GammaPushforward {
  DivClass resonance;        // class of the resonance divisor on M̄13
  DivClass hurwitz;          // 48λ − 7δ0 (times the Hurwitz multiplicity)
  DivClass gamma_push;       // ϑ⋆(γ)
  Rational res_multiplier;   // 132
  Rational lambda_pullback;  // −9/4
  Rational gamma_coeff;      // 13/8
  Rational degree;           // deg ϑ = 3
};

// Solves 132·(−(9/4)·deg·λ + (13/8)·ϑ⋆γ) = [D13] + 3·6·(48λ − 7δ0) for ϑ⋆γ.
GammaPushforward solve_gamma_pushforward(const DivClass& virtual_class);

DivClass mp_class(const DivClass& gamma_push);
DivClass theta_class_r13(const DivClass& gamma_push);

struct KodairaReport {
  DivClass combination;             // (65/674)Θ + (1153/3707)·D13:2
  Rational lambda_coeff;            // 4362/337
  bool lambda_below_13 = false;
  std::vector<Rational> boundary_bounds;  // i = 1..6: 2(6i+18) − a(i+1)
  bool boundary_bounds_ok = false;  // every bound ≥ 3
  DivClass canonical_minus_d;       // K − D on the known components
  bool canonical_big = false;
  bool pullback_identity_ok = false;
};
KodairaReport kodaira_check_r13(const DivClass& theta);

struct M13_9Report {
  Rational slope_in;
  Rational lhs;     // 2s − 9/17
  Rational margin;  // 13 − lhs
  bool holds = false;
};
M13_9Report m13_9_check(const Rational& slope);

}  // namespace g13
