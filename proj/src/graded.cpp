#include "artifact/graded.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace g13 {

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void accumulate(Terms& out, const Monomial& m, const Rational& c) {
  auto [it, inserted] = out.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  } else if (c == 0) {
    out.erase(it);
  }
}

}  // namespace

std::shared_ptr<const GradedRing> GradedRing::create(std::vector<GeneratorSpec> gens,
                                                     std::vector<RewriteRule> rules,
                                                     int top_degree) {
  std::shared_ptr<GradedRing> r(new GradedRing());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree < 0) throw std::invalid_argument("negative generator degree");
    for (std::size_t j = 0; j < i; ++j)
      if (gens[i].name == gens[j].name)
        throw std::invalid_argument("duplicate generator " + gens[i].name);
  }
  r->gens_ = std::move(gens);
  r->top_ = top_degree;
  for (auto& rule : rules) {
    if (rule.lead.size() != r->gens_.size()) throw std::invalid_argument("rule arity");
    int d = r->degree(rule.lead);
    for (auto& [m, c] : rule.rhs) {
      if (m.size() != r->gens_.size()) throw std::invalid_argument("rule arity");
      if (r->degree(m) != d) throw std::invalid_argument("rule is not homogeneous");
      if (!(m < rule.lead)) throw std::invalid_argument("rule does not decrease lex order");
    }
  }
  r->rules_ = std::move(rules);
  return r;
}

std::size_t GradedRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  throw std::invalid_argument("unknown generator " + std::string(name));
}

int GradedRing::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
  return d;
}

Monomial GradedRing::monomial(
    std::initializer_list<std::pair<std::string_view, int>> powers) const {
  Monomial m(gens_.size(), 0);
  for (auto& [name, e] : powers) m[index_of(name)] += static_cast<std::uint8_t>(e);
  return m;
}

const RewriteRule* GradedRing::matching_rule(const Monomial& m) const {
  for (auto& r : rules_)
    if (divides(r.lead, m)) return &r;
  return nullptr;
}

void GradedRing::reduce_into(Terms& out, const Monomial& m, const Rational& coef) const {
  if (coef == 0) return;
  std::vector<std::pair<Monomial, Rational>> work{{m, coef}};
  while (!work.empty()) {
    auto [mono, c] = std::move(work.back());
    work.pop_back();
    if (top_ != kNoCutoff && degree(mono) > top_) continue;
    const RewriteRule* rule = matching_rule(mono);
    if (!rule) {
      accumulate(out, mono, c);
      continue;
    }
    for (auto& [rm, rc] : rule->rhs) {
      Monomial next(mono.size());
      for (std::size_t i = 0; i < mono.size(); ++i) next[i] = mono[i] - rule->lead[i] + rm[i];
      work.emplace_back(std::move(next), c * rc);
    }
  }
}

GradedElement::GradedElement(RingPtr ring) : ring_(std::move(ring)) {}

GradedElement::GradedElement(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
  if (constant != 0) terms_.emplace(Monomial(ring_->size(), 0), constant);
}

GradedElement GradedElement::generator(RingPtr ring, std::string_view name) {
  Monomial m(ring->size(), 0);
  m[ring->index_of(name)] = 1;
  Terms t{{m, Rational(1)}};
  return from_terms(std::move(ring), t);
}

GradedElement GradedElement::from_terms(RingPtr ring, const Terms& raw) {
  GradedElement e(ring);
  for (auto& [m, c] : raw) ring->reduce_into(e.terms_, m, c);
  return e;
}

Rational GradedElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedElement::constant_term() const {
  return coefficient(Monomial(ring_->size(), 0));
}

int GradedElement::degree() const {
  int d = -1;
  for (auto& [m, c] : terms_) d = std::max(d, ring_->degree(m));
  return d;
}

bool GradedElement::is_homogeneous() const {
  int d = -1;
  for (auto& [m, c] : terms_) {
    int md = ring_->degree(m);
    if (d >= 0 && md != d) return false;
    d = md;
  }
  return true;
}

void GradedElement::check_same_ring(const GradedElement& o) const {
  if (ring_ != o.ring_) throw std::invalid_argument("ring mismatch");
}

GradedElement GradedElement::operator-() const {
  GradedElement r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  check_same_ring(o);
  for (auto& [m, c] : o.terms_) accumulate(terms_, m, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  check_same_ring(o);
  for (auto& [m, c] : o.terms_) accumulate(terms_, m, -c);
  return *this;
}

GradedElement& GradedElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedElement& GradedElement::operator*=(const GradedElement& o) {
  *this = ring_mul(*this, o);
  return *this;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) { return ring_mul(a, b); }

bool operator==(const GradedElement& a, const GradedElement& b) {
  return a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

std::string GradedElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest monomials first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = true;
    for (auto e : m) unit = unit && e == 0;
    if (mag != 1 || unit) os << mag.get_str();
    bool need_star = mag != 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (need_star) os << "*";
      os << ring_->generators()[i].name;
      if (m[i] > 1) os << "^" << int(m[i]);
      need_star = true;
    }
  }
  return os.str();
}

GradedElement ring_mul(const GradedElement& a, const GradedElement& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("ring mismatch");
  const auto& ring = *a.ring();
  Terms raw;
  Monomial prod(ring.size());
  for (auto& [ma, ca] : a.terms()) {
    for (auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
      if (ring.top_degree() != GradedRing::kNoCutoff && ring.degree(prod) > ring.top_degree())
        continue;
      ring.reduce_into(raw, prod, ca * cb);
    }
  }
  GradedElement r(a.ring());
  r.terms_ = std::move(raw);
  return r;
}

GradedElement graded_part(const GradedElement& x, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  Terms t;
  for (auto& [m, c] : x.terms())
    if (x.ring()->degree(m) == d) t.emplace(m, c);
  return GradedElement::from_terms(x.ring(), t);
}

GradedElement series_inverse(const GradedElement& x) {
  if (x.constant_term() != 1) throw std::invalid_argument("series_inverse: constant term is not 1");
  const auto& ring = x.ring();
  int min_deg = -1;
  for (auto& g : ring->generators())
    if (g.degree > 0 && (min_deg < 0 || g.degree < min_deg)) min_deg = g.degree;
  GradedElement one(ring, Rational(1));
  GradedElement n = one - x;  // x = 1 - n, x^{-1} = sum n^k
  for (auto& [m, c] : n.terms())
    if (ring->degree(m) == 0) throw std::invalid_argument("series_inverse: degree-0 generators");
  if (ring->top_degree() == GradedRing::kNoCutoff && !n.is_zero())
    throw std::invalid_argument("series_inverse needs a top-degree cutoff");
  GradedElement sum = one, p = one;
  int steps = n.is_zero() ? 0 : ring->top_degree() / min_deg;
  for (int k = 0; k < steps; ++k) {
    p = ring_mul(p, n);
    if (p.is_zero()) break;
    sum += p;
  }
  return sum;
}

GradedElement power(const GradedElement& x, unsigned e) {
  GradedElement r(x.ring(), Rational(1)), b = x;
  while (e) {
    if (e & 1) r = ring_mul(r, b);
    e >>= 1;
    if (e) b = ring_mul(b, b);
  }
  return r;
}

GradedElement rereduce(const GradedElement& x) { return GradedElement::from_terms(x.ring(), x.terms()); }

}  // namespace g13
