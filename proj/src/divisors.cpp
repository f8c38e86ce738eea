#include "artifact/divisors.hpp"

#include <sstream>
#include <stdexcept>

namespace g13 {

DivClass::DivClass(std::vector<std::string> basis) : basis_(std::move(basis)) {
  coef_.resize(basis_.size());
  for (auto& e : coef_) e.value = Rational(0);
}

DivClass DivClass::m13() {
  std::vector<std::string> b{"lambda"};
  for (int i = 0; i <= 6; ++i) b.push_back("delta" + std::to_string(i));
  return DivClass(std::move(b));
}

DivClass DivClass::r13() {
  std::vector<std::string> b{"lambda", "delta0'", "delta0''", "delta0ram"};
  for (int i = 1; i <= 12; ++i) b.push_back("delta" + std::to_string(i));
  for (int i = 1; i <= 6; ++i) b.push_back("delta" + std::to_string(i) + ":" + std::to_string(13 - i));
  return DivClass(std::move(b));
}

std::size_t DivClass::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == name) return i;
  throw std::invalid_argument("no basis element " + name);
}

DivClass& DivClass::set(const std::string& name, const Rational& value) {
  coef_[index_of(name)] = Entry{value, std::nullopt};
  return *this;
}

DivClass& DivClass::set_unknown(const std::string& name, std::optional<Rational> b_lower_bound) {
  coef_[index_of(name)] = Entry{std::nullopt, std::move(b_lower_bound)};
  return *this;
}

bool DivClass::known(const std::string& name) const { return coef_[index_of(name)].value.has_value(); }

Rational DivClass::at(const std::string& name) const {
  const auto& e = coef_[index_of(name)];
  if (!e.value) throw std::logic_error("coefficient of " + name + " is unknown");
  return *e.value;
}

std::optional<Rational> DivClass::b_lower_bound(const std::string& name) const {
  return coef_[index_of(name)].b_bound;
}

void DivClass::check_basis(const DivClass& o) const {
  if (basis_ != o.basis_) throw std::invalid_argument("divisor classes over different bases");
}

DivClass DivClass::operator+(const DivClass& o) const {
  check_basis(o);
  DivClass r(basis_);
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i].value && o.coef_[i].value)
      r.coef_[i] = Entry{*coef_[i].value + *o.coef_[i].value, std::nullopt};
    else
      r.coef_[i] = Entry{std::nullopt, std::nullopt};
  }
  return r;
}

DivClass DivClass::operator-(const DivClass& o) const { return *this + o * Rational(-1); }

DivClass DivClass::operator*(const Rational& c) const {
  DivClass r(*this);
  for (auto& e : r.coef_) {
    if (e.value) *e.value *= c;
    // A lower bound on b survives scaling by a positive constant only.
    if (e.b_bound) {
      if (c > 0)
        *e.b_bound *= c;
      else
        e.b_bound.reset();
    }
  }
  return r;
}

bool DivClass::operator==(const DivClass& o) const {
  if (basis_ != o.basis_) return false;
  for (std::size_t i = 0; i < coef_.size(); ++i)
    if (coef_[i].value != o.coef_[i].value) return false;
  return true;
}

std::string DivClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& e = coef_[i];
    if (e.value && *e.value == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (e.value)
      os << "(" << e.value->get_str() << ")" << basis_[i];
    else
      os << "(?)" << basis_[i];
  }
  return first ? "0" : os.str();
}

nlohmann::json DivClass::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& e = coef_[i];
    if (e.value) {
      if (*e.value != 0) j[basis_[i]] = g13::to_string(*e.value);
    } else if (e.b_bound) {
      j[basis_[i]] = "unknown (b >= " + g13::to_string(*e.b_bound) + ")";
    } else {
      j[basis_[i]] = "unknown";
    }
  }
  return j;
}

Rational slope(const DivClass& c) {
  Rational a = c.at("lambda");
  std::optional<Rational> min_b;
  std::vector<Rational> bounds;
  for (const auto& name : c.basis()) {
    if (name == "lambda") continue;
    if (c.known(name)) {
      Rational b = -c.at(name);
      if (b <= 0) throw std::domain_error("slope: boundary coefficient of " + name + " is not negative");
      if (!min_b || b < *min_b) min_b = b;
    } else if (auto lb = c.b_lower_bound(name)) {
      bounds.push_back(*lb);
    } else {
      throw std::domain_error("slope: boundary coefficient of " + name + " is unknown");
    }
  }
  if (!min_b) throw std::domain_error("slope: no boundary coefficients");
  for (auto& lb : bounds)
    if (lb < *min_b) throw std::domain_error("slope: unknown coefficient may undercut the minimum");
  return a / *min_b;
}

DivClass pullback_to_r13(const DivClass& m) {
  DivClass r = DivClass::r13();
  r.set("lambda", m.at("lambda"));
  Rational d0 = m.at("delta0");
  r.set("delta0'", d0).set("delta0''", d0).set("delta0ram", 2 * d0);
  for (const auto& name : r.basis())
    if (name != "lambda" && name.rfind("delta0", 0) != 0) r.set_unknown(name);
  return r;
}

namespace {

// δ1..δ6 are elided in these classes; they are carried as unknowns under
// the usual hypothesis b_i ≥ b0, which is all slope() needs.
DivClass with_elided(DivClass c) {
  Rational b0 = -c.at("delta0");
  for (int i = 1; i <= 6; ++i) c.set_unknown("delta" + std::to_string(i), b0);
  return c;
}

DivClass lambda_delta0(const Rational& l, const Rational& d0) {
  DivClass c = DivClass::m13();
  c.set("lambda", l).set("delta0", d0);
  return with_elided(c);
}

}  // namespace

GammaPushforward solve_gamma_pushforward(const DivClass& virtual_class) {
  GammaPushforward g{DivClass::m13(), DivClass::m13(), DivClass::m13(), Rational(132),
                     make_rational(-9, 4),  make_rational(13, 8), Rational(3)};
  // The resonance divisor is the virtual divisor plus three copies of the
  // Hurwitz divisor, whose class is 6(48λ − 7δ0 − ⋯).
  g.hurwitz = lambda_delta0(6 * 48, 6 * -7);
  g.resonance = with_elided(lambda_delta0(virtual_class.at("lambda"), virtual_class.at("delta0")) + g.hurwitz * 3);
  // ϑ⋆[Res♯] = mult·(λ_pull·deg·λ + γ_coeff·ϑ⋆γ) equals the resonance class.
  DivClass pulled_lambda = lambda_delta0(g.res_multiplier * g.lambda_pullback * g.degree, 0);
  g.gamma_push = with_elided((g.resonance - pulled_lambda) * (1 / (g.res_multiplier * g.gamma_coeff)));
  return g;
}

DivClass mp_class(const DivClass& gamma_push) {
  return with_elided(lambda_delta0(18, -3) +
                     lambda_delta0(gamma_push.at("lambda"), gamma_push.at("delta0")) * make_rational(1, 2));
}

DivClass theta_class_r13(const DivClass& gamma_push) {
  // Θ = ϑ⋆(c1(B) − c1(A)) with c1(B) = ϑ*(4λ + 2δ0^ram) − 6γ and
  // c1(A) = −7γ + ϑ*(6λ + (3/2)δ0^ram); deg ϑ = 3.
  const Rational deg = 3;
  Rational lam = deg * (4 - 6);
  Rational ram = deg * (2 - make_rational(3, 2));
  DivClass theta = pullback_to_r13(lambda_delta0(gamma_push.at("lambda"), gamma_push.at("delta0")));
  DivClass shift = DivClass::r13();
  shift.set("lambda", lam).set("delta0ram", ram);
  return theta + shift;
}

KodairaReport kodaira_check_r13(const DivClass& theta) {
  const Rational w_theta = make_rational(65, 674), w_d = make_rational(1153, 3707);
  DivClass d13 = DivClass::r13();
  d13.set("lambda", 19).set("delta0'", -3).set("delta0''", -3).set("delta0ram", make_rational(-13, 4));
  DivClass known_theta = DivClass::r13();
  for (const char* n : {"lambda", "delta0'", "delta0''", "delta0ram"}) known_theta.set(n, theta.at(n));

  KodairaReport r{known_theta * w_theta + d13 * w_d, 0, false, {}, false, DivClass::r13(), false, false};
  r.lambda_coeff = r.combination.at("lambda");
  r.lambda_below_13 = r.lambda_coeff < 13;

  // Hypotheses a0', a0'' ≥ 2 in the b-convention; the K3 pencil bound for
  // 1 ≤ i ≤ 6 reads a_{13−i} ≥ a0'(6i+18) − a(i+1).
  const Rational a0p = 2;
  r.boundary_bounds_ok = true;
  for (int i = 1; i <= 6; ++i) {
    Rational b = a0p * (6 * i + 18) - r.lambda_coeff * (i + 1);
    r.boundary_bounds.push_back(b);
    if (b < 3) r.boundary_bounds_ok = false;
  }

  DivClass k = DivClass::r13();
  k.set("lambda", 13).set("delta0'", -2).set("delta0''", -2).set("delta0ram", -3);
  for (int i = 1; i <= 12; ++i) k.set("delta" + std::to_string(i), (i == 1 || i == 12) ? -3 : -2);
  for (int i = 1; i <= 6; ++i)
    k.set("delta" + std::to_string(i) + ":" + std::to_string(13 - i), i == 1 ? -3 : -2);

  // D's remaining boundary coefficients are only known through b ≥ 3.
  for (int i = 1; i <= 12; ++i) r.combination.set_unknown("delta" + std::to_string(i), Rational(3));
  for (int i = 1; i <= 6; ++i)
    r.combination.set_unknown("delta" + std::to_string(i) + ":" + std::to_string(13 - i), Rational(3));
  const DivClass& d_full = r.combination;
  r.canonical_minus_d = k - d_full;

  // K − D = (13 − a)λ + Σ (b_D − b_K)δ. Bigness needs 13 − a > 0 and
  // b_D ≥ b_K on every boundary component.
  bool ok = 13 - r.lambda_coeff > 0;
  for (const auto& name : k.basis()) {
    if (name == "lambda") continue;
    Rational b_k = -k.at(name);
    Rational b_d = d_full.known(name) ? -d_full.at(name) : *d_full.b_lower_bound(name);
    if (b_d < b_k) ok = false;
  }
  r.canonical_big = ok && r.boundary_bounds_ok;

  // π*δ0 = δ0' + δ0'' + 2δ0^ram, checked on δ0 itself.
  DivClass delta0 = DivClass::m13();
  delta0.set("delta0", 1);
  DivClass pulled = pullback_to_r13(delta0);
  r.pullback_identity_ok = pulled.at("delta0'") == 1 && pulled.at("delta0''") == 1 &&
                           pulled.at("delta0ram") == 2 && pulled.at("lambda") == 0;
  return r;
}

M13_9Report m13_9_check(const Rational& s) {
  M13_9Report r;
  r.slope_in = s;
  r.lhs = 2 * s - make_rational(9, 17);
  r.margin = 13 - r.lhs;
  r.holds = r.margin > 0;
  return r;
}

}  // namespace g13
