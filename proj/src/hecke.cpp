#include "artifact/hecke.hpp"

#include <bit>
#include <stdexcept>

namespace g13 {

namespace {

constexpr int kGenus = 13;
constexpr int kTopComplex = 37;
enum : std::size_t { kH = 0, kAlpha = 1, kBeta = 2, kGamma = 3 };

// h² = αh − (α² − β)/4
RewriteRule h_square_rule(std::size_t n_gens, std::size_t h, std::size_t alpha, std::size_t beta) {
  auto m = [&](std::initializer_list<std::pair<std::size_t, int>> pw) {
    Monomial x(n_gens, 0);
    for (auto [i, e] : pw) x[i] = static_cast<std::uint8_t>(e);
    return x;
  };
  return RewriteRule{m({{h, 2}}),
                     {{m({{h, 1}, {alpha, 1}}), Rational(1)},
                      {m({{alpha, 2}}), make_rational(-1, 4)},
                      {m({{beta, 1}}), make_rational(1, 4)}}};
}

GradedElement v_const(const Rational& c) { return GradedElement(verlinde_ring(), c); }

}  // namespace

RingPtr verlinde_ring() {
  static const RingPtr ring = GradedRing::create(
      {{"h", 2}, {"alpha", 2}, {"beta", 4}, {"gamma", 6}}, {h_square_rule(4, kH, kAlpha, kBeta)},
      2 * kTopComplex);
  return ring;
}

GradedElement verlinde_gen(const char* name) { return GradedElement::generator(verlinde_ring(), name); }

VerlindeElement split_h(const GradedElement& x) {
  Terms p, q;
  for (auto& [m, c] : x.terms()) {
    if (m[kH] > 1) throw std::logic_error("split_h: element not h-reduced");
    Monomial s = m;
    s[kH] = 0;
    (m[kH] ? q : p).emplace(s, c);
  }
  return {GradedElement::from_terms(x.ring(), p), GradedElement::from_terms(x.ring(), q)};
}

GradedElement combine(const VerlindeElement& v) { return v.p + verlinde_gen("h") * v.q; }

GradedElement h_mul(const GradedElement& a, const GradedElement& b) { return ring_mul(a, b); }

std::vector<GradedElement> c_sequence(int n) {
  if (n < 0) throw std::invalid_argument("c_sequence: negative index");
  GradedElement h = verlinde_gen("h"), beta = verlinde_gen("beta"), gamma = verlinde_gen("gamma");
  GradedElement h2 = h * h, h3 = h2 * h, h4 = h3 * h;
  std::vector<GradedElement> c{
      v_const(2),
      h,
      h2 * make_rational(1, 2),
      (h3 * make_rational(1, 2) + beta * h * make_rational(1, 4) - gamma * make_rational(1, 2)) *
          make_rational(1, 3),
      (h4 * make_rational(1, 6) + beta * h2 * make_rational(1, 3) - gamma * h * make_rational(2, 3)) *
          make_rational(1, 4),
  };
  GradedElement shift = beta * h * make_rational(1, 4) + gamma * make_rational(1, 2);
  for (int k = 1; static_cast<int>(c.size()) <= n; ++k) {
    GradedElement rhs = h * c[k + 3] - shift * c[k + 1] + beta * c[k + 2] * make_rational(k + 2, 2) -
                        beta * beta * c[k] * make_rational(k, 16);
    c.push_back(rhs * make_rational(1, k + 4));
  }
  c.resize(n + 1, v_const(0));
  return c;
}

GradedElement recursion_residual(const std::vector<GradedElement>& cs, int n) {
  GradedElement h = verlinde_gen("h"), beta = verlinde_gen("beta"), gamma = verlinde_gen("gamma");
  GradedElement shift = beta * h * make_rational(1, 4) + gamma * make_rational(1, 2);
  return cs.at(n + 4) * Rational(n + 4) - beta * cs.at(n + 2) * make_rational(n + 2, 2) +
         beta * beta * cs.at(n) * make_rational(n, 16) - h * cs.at(n + 3) + shift * cs.at(n + 1);
}

int bp8_index(int row, int col) {
  if (row < 0 || row > 7 || col < 0 || col > 7) throw std::out_of_range("bp8 entry");
  if (row <= 4) return 8 - 2 * row + col;
  // Rows 5..7 are shifted right by 2, 4, 6 columns.
  int shift = 2 * (row - 4);
  return col < shift ? -1 : col - shift;
}

GradedElement bp8_determinant(const std::vector<GradedElement>& cs) {
  if (cs.size() < 16) throw std::invalid_argument("bp8_determinant needs c_0..c_15");
  // det[mask] is the minor on rows 8−|mask|..7 and the columns in mask.
  std::vector<GradedElement> det(256, v_const(0));
  det[0] = v_const(1);
  for (unsigned mask = 1; mask < 256; ++mask) {
    int row = 8 - std::popcount(mask);
    GradedElement acc = v_const(0);
    int pos = 0;
    for (int col = 0; col < 8; ++col) {
      if (!(mask & (1u << col))) continue;
      int idx = bp8_index(row, col);
      if (idx >= 0) {
        GradedElement term = cs[idx] * det[mask & ~(1u << col)];
        if (pos % 2) acc -= term; else acc += term;
      }
      ++pos;
    }
    det[mask] = std::move(acc);
  }
  return det[255];
}

std::vector<Rational> bernoulli_table(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[k];
    b[m] = -s / (m + 1);
  }
  return b;
}

Rational thaddeus_number(int m, int n, int p) {
  if (m < 0 || n < 0 || p < 0) throw std::invalid_argument("thaddeus_number: negative exponent");
  if (m + 2 * n + 3 * p != 3 * kGenus - 3) throw std::invalid_argument("thaddeus_number: degree mismatch");
  if (p > kGenus) throw std::invalid_argument("thaddeus_number: p > g");
  int q = m + p + 1 - kGenus;
  if (q < 0 || q == 1 || q % 2 == 1) return 0;
  static const std::vector<Rational> bern = bernoulli_table(3 * kGenus);
  Rational r = Rational(factorial(kGenus) * factorial(m)) / Rational(factorial(kGenus - p) * factorial(q));
  r *= pow(Rational(2), 2 * kGenus - 2 - p);
  r *= pow(Rational(2), q) - 2;
  r *= bern[q];
  if ((kGenus - p) % 2) r = -r;
  return r;
}

Rational integrate_su(const GradedElement& f) {
  Rational s = 0;
  for (auto& [m, c] : f.terms()) {
    if (m[kH]) throw std::invalid_argument("integrate_su: class involves h");
    if (m[kAlpha] + 2 * m[kBeta] + 3 * m[kGamma] != 3 * kGenus - 3) continue;
    s += c * thaddeus_number(m[kAlpha], m[kBeta], m[kGamma]);
  }
  return s;
}

Rational integrate_p(const GradedElement& x) { return integrate_su(split_h(x).q); }

BundleCount count_bundles() {
  auto cs = c_sequence(15);
  GradedElement d = bp8_determinant(cs);
  auto [f, u] = split_h(d);
  BundleCount r{f, u, integrate_su(f), integrate_su(verlinde_gen("alpha") * u), 0, 0,
                "count = |(1/2) * integral over SU of f|"};
  r.integral_h_det = integrate_p(verlinde_gen("h") * d);
  Rational half = r.integral_f / 2;
  if (!is_integer(half)) throw std::logic_error("count_bundles: half-integral count");
  r.count = abs(half.get_num());
  return r;
}

PowersOfHCheck check_powers_of_h(int max_n) {
  // Generators h, s (= √β), α, β; no truncation.
  RingPtr ring = GradedRing::create(
      {{"h", 2}, {"s", 2}, {"alpha", 2}, {"beta", 4}},
      {h_square_rule(4, 0, 2, 3), RewriteRule{Monomial{0, 2, 0, 0}, {{Monomial{0, 0, 0, 1}, Rational(1)}}}},
      GradedRing::kNoCutoff);
  auto gen = [&](const char* n) { return GradedElement::generator(ring, n); };
  GradedElement h = gen("h"), s = gen("s"), a = gen("alpha"), b = gen("beta");
  GradedElement root_plus = (a + s) * make_rational(1, 2), root_minus = (a - s) * make_rational(1, 2);
  GradedElement disc = a * a - b;
  GradedElement denom = s * disc;
  // h is a root of x² − αx + (α² − β)/4, whose roots are (α ± √β)/2.
  GradedElement derived_plus = disc * (h - root_minus), derived_minus = -(disc * (h - root_plus));
  GradedElement base = a * a - a * h * Rational(2) + b;
  GradedElement variant_plus = h * (h * Rational(2) - a * Rational(2)) * s + base;
  GradedElement variant_minus = h * (a * Rational(2) - h * Rational(2)) * s + base;

  PowersOfHCheck r{max_n, 0, 0};
  GradedElement hn = h, pp = root_plus, pm = root_minus;
  for (int n = 2; n <= max_n; ++n) {
    hn = hn * h;
    pp = pp * root_plus;
    pm = pm * root_minus;
    GradedElement lhs = hn * denom;
    if (!r.derived_first_failure && !(lhs == derived_plus * pp + derived_minus * pm))
      r.derived_first_failure = n;
    if (!r.variant_first_failure && !(lhs == variant_plus * pp + variant_minus * pm))
      r.variant_first_failure = n;
  }
  return r;
}

PorteousCount porteous_resonance_count() {
  RingPtr ring = GradedRing::create({{"h", 2}}, {}, 12);  // P⁶
  GradedElement one(ring, 1), h = GradedElement::generator(ring, "h");
  GradedElement c_sum = power(one + h, 7);                       // c_tot of O(1)^{⊕7}
  GradedElement c_wedge = (one + h * Rational(2)) * series_inverse(c_sum);  // c_tot(Λ²M)
  GradedElement cls = graded_part(series_inverse(c_sum) * series_inverse(c_wedge), 12);
  PorteousCount r;
  Rational top = cls.coefficient(Monomial{6});
  r.porteous = top.get_num();
  const int d = 17, g = 13;
  r.excess = 10 * d + 2 * d - 7 * d - (2 * g - 2);
  r.difference = r.porteous - r.excess;
  return r;
}

}  // namespace g13
