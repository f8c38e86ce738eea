#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artifact/rational.hpp"

namespace g13 {

// Exponent vector, indexed by generator position in the ring.
using Monomial = std::vector<std::uint8_t>;
using Terms = std::map<Monomial, Rational>;

struct GeneratorSpec {
  std::string name;
  int degree;  // cohomological
};

// lead -> rhs. The rhs must have the same degree as lead and every rhs
// monomial must be lex-smaller than lead, so rewriting terminates.
struct RewriteRule {
  Monomial lead;
  std::vector<std::pair<Monomial, Rational>> rhs;
};

class GradedElement;

// A graded quotient Q[x_1..x_n]/(rules), truncated above top_degree.
// Immutable once created; shared by every element that lives in it.
class GradedRing {
 public:
  static constexpr int kNoCutoff = -1;

  static std::shared_ptr<const GradedRing> create(std::vector<GeneratorSpec> gens,
                                                  std::vector<RewriteRule> rules,
                                                  int top_degree);

  const std::vector<GeneratorSpec>& generators() const { return gens_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  int top_degree() const { return top_; }
  std::size_t size() const { return gens_.size(); }

  std::size_t index_of(std::string_view name) const;
  int degree(const Monomial& m) const;

  // Monomial from (name, exponent) pairs.
  Monomial monomial(std::initializer_list<std::pair<std::string_view, int>> powers) const;

  // Adds coef * m, fully reduced, into out.
  void reduce_into(Terms& out, const Monomial& m, const Rational& coef) const;

  // Largest monomial of the first rule whose lead divides m, or nullptr.
  const RewriteRule* matching_rule(const Monomial& m) const;

 private:
  GradedRing() = default;
  std::vector<GeneratorSpec> gens_;
  std::vector<RewriteRule> rules_;
  int top_ = kNoCutoff;
};

using RingPtr = std::shared_ptr<const GradedRing>;

class GradedElement {
 public:
  explicit GradedElement(RingPtr ring);
  GradedElement(RingPtr ring, const Rational& constant);

  static GradedElement generator(RingPtr ring, std::string_view name);
  static GradedElement from_terms(RingPtr ring, const Terms& raw);  // reduces

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  // Max monomial degree; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;

  GradedElement operator-() const;
  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  GradedElement& operator*=(const Rational& c);
  GradedElement& operator*=(const GradedElement& o);

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(GradedElement a, const Rational& c) { return a *= c; }
  friend GradedElement operator*(const Rational& c, GradedElement a) { return a *= c; }
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
  friend bool operator==(const GradedElement& a, const GradedElement& b);
  friend GradedElement ring_mul(const GradedElement& a, const GradedElement& b);

  std::string to_string() const;

 private:
  void check_same_ring(const GradedElement& o) const;
  RingPtr ring_;
  Terms terms_;
};

GradedElement ring_mul(const GradedElement& a, const GradedElement& b);
GradedElement graded_part(const GradedElement& x, int d);
GradedElement series_inverse(const GradedElement& x);
GradedElement power(const GradedElement& x, unsigned e);

// Re-applies the ring's reduction to every term. Identity on valid elements;
// exposed so the idempotence property can be tested.
GradedElement rereduce(const GradedElement& x);

}  // namespace g13
