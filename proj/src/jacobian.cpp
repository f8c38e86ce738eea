#include "artifact/jacobian.hpp"

#include <stdexcept>
#include <string>

namespace g13 {

namespace {

constexpr int kGenus = 13;
constexpr int kTop = 14;  // cohomological top degree of X × W

// Generator order fixes the lex order; γ must precede η and θ so that
// γ² → −2ηθ strictly decreases.
const std::vector<GeneratorSpec>& jac_generators() {
  static const std::vector<GeneratorSpec> gens = [] {
    std::vector<GeneratorSpec> g{{"gamma", 2}, {"eta", 2}, {"theta", 2}, {"y1", 2}};
    for (int i = 1; i <= 7; ++i) g.push_back({"c" + std::to_string(i), 2 * i});
    g.push_back({"kZ", 2});
    g.push_back({"kY", 2});
    return g;
  }();
  return gens;
}

Monomial mono(std::initializer_list<std::pair<std::size_t, int>> powers) {
  Monomial m(jac_generators().size(), 0);
  for (auto [i, e] : powers) m[i] = static_cast<std::uint8_t>(e);
  return m;
}

enum : std::size_t { kGamma = 0, kEta = 1, kTheta = 2, kY1 = 3, kC1 = 4, kKZ = 11, kKY = 12 };

GradedElement constant(const Rational& c) { return GradedElement(jac_ring(), c); }

}  // namespace

RingPtr jac_ring() {
  static const RingPtr ring = [] {
    std::vector<RewriteRule> rules{
        {mono({{kGamma, 2}}), {{mono({{kEta, 1}, {kTheta, 1}}), Rational(-2)}}},
        {mono({{kGamma, 1}, {kEta, 1}}), {}},
        {mono({{kEta, 2}}), {}},
    };
    return GradedRing::create(jac_generators(), std::move(rules), kTop);
  }();
  return ring;
}

GradedElement jac_gen(const char* name) { return GradedElement::generator(jac_ring(), name); }

GradedElement c_symbol(int i) {
  if (i < 0 || i > 7) throw std::out_of_range("c_i index");
  if (i == 0) return constant(1);
  return GradedElement::generator(jac_ring(), "c" + std::to_string(i));
}

GradedElement chern_M(int i) {
  if (i < 0 || i > 7) throw std::out_of_range("c_i index");
  if (i == 0) return constant(1);
  if (i == 7) return GradedElement(jac_ring());  // rank 6
  GradedElement theta = jac_gen("theta"), y = jac_gen("y1");
  Rational a = Rational(1) / Rational(factorial(i));
  Rational b = Rational(1) / Rational(factorial(i - 1));
  return power(theta, i) * a - power(theta, i - 1) * y * b;
}

SurfaceContext surface_context(Surface which) {
  GradedElement eta = jac_gen("eta"), gamma = jac_gen("gamma");
  GradedElement one = constant(1);
  // c1 of the degree-16 line bundle on X × W in the η/γ basis.
  GradedElement p = eta * Rational(16) + gamma;
  GradedElement sub_total(jac_ring());
  if (which == Surface::Z) {
    // Jet bundle J1(P): extension of P by P ⊗ ω_X, deg ω_X = 22.
    sub_total = (one - p) * (one - p - eta * Rational(22));
  } else {
    sub_total = (one - p) * (one + eta);
  }
  GradedElement inv = series_inverse(sub_total);
  GradedElement m_dual = one;
  for (int i = 1; i <= 7; ++i) m_dual += c_symbol(i);
  GradedElement total = m_dual * inv;
  return SurfaceContext{which,
                        total,
                        graded_part(total, 10),
                        -graded_part(total, 12),
                        graded_part(total, 14),
                        graded_part(inv, 2),
                        which == Surface::Z ? "kZ" : "kY"};
}

GradedElement surface_class(Surface which) { return surface_context(which).cls; }

RankTwoCherns chern_A2B2() {
  GradedElement eta = jac_gen("eta"), gamma = jac_gen("gamma"), theta = jac_gen("theta");
  const Rational d = 16, g = 12;  // degree of L and genus of X
  GradedElement c1A = theta * Rational(-4) - gamma * Rational(4) - eta * Rational(4 * d + 2 * g - 2);
  GradedElement c1B = theta * Rational(-4) - gamma * Rational(2) - eta * Rational(2 * d - 1);
  GradedElement ch2A = eta * theta * Rational(8);
  GradedElement ch2B = eta * theta * Rational(4);
  Rational half(1, 2);
  return {c1A, (c1A * c1A - ch2A * Rational(2)) * half, c1B, (c1B * c1B - ch2B * Rational(2)) * half};
}

GradedElement kernel_reduce(const GradedElement& x, const SurfaceContext& ctx) {
  const auto& ring = jac_ring();
  if (x.ring() != ring) throw std::invalid_argument("kernel_reduce: ring mismatch");
  std::size_t own = ring->index_of(ctx.kappa);
  std::size_t other = own == kKZ ? kKY : kKZ;
  Terms parts[3];
  for (auto& [m, c] : x.terms()) {
    if (m[other]) throw std::invalid_argument("kernel_reduce: mixed surface contexts");
    if (m[own] > 2) throw std::invalid_argument("kernel_reduce: kappa degree above 2");
    Monomial stripped = m;
    stripped[own] = 0;
    parts[m[own]].emplace(stripped, c);
  }
  GradedElement k0 = GradedElement::from_terms(ring, parts[0]);
  GradedElement k1 = GradedElement::from_terms(ring, parts[1]);
  GradedElement k2 = GradedElement::from_terms(ring, parts[2]);
  return k0 * ctx.cls + k1 * ctx.kappa_linear + k2 * ctx.kappa_square;
}

GradedElement eta_coefficient(const GradedElement& top_class) {
  Terms t;
  for (auto& [m, c] : top_class.terms()) {
    if (m[kEta] != 1) continue;
    Monomial s = m;
    s[kEta] = 0;
    t.emplace(s, c);
  }
  return GradedElement::from_terms(top_class.ring(), t);
}

GradedElement substitute_chern(const GradedElement& x) {
  const auto& ring = jac_ring();
  std::vector<GradedElement> cm;
  for (int i = 0; i <= 7; ++i) cm.push_back(chern_M(i));
  GradedElement out(ring);
  for (auto& [m, c] : x.terms()) {
    Monomial rest = m;
    GradedElement term(ring, c);
    for (int i = 1; i <= 7; ++i) {
      std::size_t idx = kC1 + i - 1;
      if (!m[idx]) continue;
      term = term * power(cm[i], m[idx]);
      rest[idx] = 0;
    }
    out += term * GradedElement::from_terms(ring, {{rest, Rational(1)}});
  }
  return out;
}

Rational evaluate_theta_y(const GradedElement& x) {
  Rational sum = 0;
  Integer f12 = factorial(12);
  for (auto& [m, c] : x.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] && i != kTheta && i != kY1)
        throw std::invalid_argument("evaluate_theta_y: monomial outside theta, y1");
    if (m[kTheta] + m[kY1] != 6) throw std::invalid_argument("evaluate_theta_y: degree mismatch");
    sum += c * Rational(Integer(f12 / factorial(12 - m[kTheta])));
  }
  return sum;
}

Rational evaluate_top(const GradedElement& x) {
  if (x.ring() != jac_ring()) throw std::invalid_argument("evaluate_top: ring mismatch");
  for (auto& [m, c] : x.terms()) {
    if (x.ring()->degree(m) != kTop) throw std::invalid_argument("evaluate_top: degree mismatch");
    if (m[kKZ] || m[kKY]) throw std::invalid_argument("evaluate_top: kappa not eliminated");
  }
  return evaluate_theta_y(substitute_chern(eta_coefficient(x)));
}

GradedElement c2_integrand(const SurfaceContext& ctx, const GradedElement& c1r,
                           const GradedElement& c2r) {
  GradedElement u = ctx.shift + jac_gen(ctx.kappa);
  GradedElement c1E = -c_symbol(1), c2E = c_symbol(2);
  GradedElement c1F = c1r + u * Rational(2);
  GradedElement c2F = c2r + c1r * u * Rational(2);
  return c1E * c1E * Rational(20) + c2E * Rational(8) - c1E * c1F * Rational(7) + c1F * c1F - c2F;
}

namespace {

PipelineResult run_pipeline(Surface which, const GradedElement& c1r, const GradedElement& c2r) {
  SurfaceContext ctx = surface_context(which);
  PipelineResult r{which, c2_integrand(ctx, c1r, c2r), GradedElement(jac_ring()),
                   GradedElement(jac_ring()), GradedElement(jac_ring()), 0, 0};
  r.top_class = kernel_reduce(r.integrand, ctx);
  r.eta_poly = eta_coefficient(r.top_class);
  r.theta_y = substitute_chern(r.eta_poly);
  r.total = evaluate_theta_y(r.theta_y);
  return r;
}

}  // namespace

PipelineResult compute_b1() {
  auto ch = chern_A2B2();
  PipelineResult r = run_pipeline(Surface::Z, ch.c1A, ch.c2A);
  // F1·δ1 = 4 − 2g and F1 misses λ and the other boundary classes.
  r.value = r.total / (2 * kGenus - 4);
  return r;
}

PipelineResult compute_b0(const Rational& b1) {
  auto ch = chern_A2B2();
  PipelineResult r = run_pipeline(Surface::Y, ch.c1B, ch.c2B);
  // F0·δ0 = 2 − 2g, F0·δ1 = 1, F0·λ = 0.
  r.value = (r.total + b1) / (2 * kGenus - 2);
  return r;
}

VirtualClass compute_virtual_class(const Rational& b0, const Rational& b1) {
  VirtualClass v{12 * b0 - b1, b0, b1, DivClass::m13(), 0, {}};
  v.cls.set("lambda", v.a).set("delta0", -b0).set("delta1", -b1);
  for (int i = 2; i <= 6; ++i) v.cls.set_unknown("delta" + std::to_string(i), b0);
  v.slope = slope(v.cls);
  for (int i = 2; i <= 6; ++i) v.positivity_quantities.push_back((6 * i + 8) * b0 - (i + 1) * v.a);
  return v;
}

}  // namespace g13
