#include "artifact/reports.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "artifact/divisors.hpp"
#include "artifact/hecke.hpp"
#include "artifact/jacobian.hpp"

namespace g13 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string str(const Rational& r) { return to_string(r); }

std::string expect(const Rational& got, const Rational& want) {
  return "got " + str(got) + ", expected " + str(want);
}

// c-monomial term: coef · θ^t · Π c_i^{e_i}.
GradedElement jterm(long coef, int theta_pow, std::initializer_list<int> cs) {
  GradedElement x = power(jac_gen("theta"), static_cast<unsigned>(theta_pow));
  for (int i : cs) x = x * c_symbol(i);
  return x * Rational(coef);
}

// Compares the named coefficients; the rest of each class is elided.
bool same_known(const DivClass& got, const DivClass& want, std::initializer_list<const char*> names) {
  for (const char* name : names)
    if (!got.known(name) || !want.known(name) || got.at(name) != want.at(name)) return false;
  return true;
}

DivClass m13_class(const Rational& lambda, const Rational& delta0) {
  DivClass c = DivClass::m13();
  c.set("lambda", lambda).set("delta0", delta0);
  return c;
}

}  // namespace

void RunReport::check(std::string name, bool pass, std::string detail) {
  verdicts.push_back({std::move(name), pass, std::move(detail)});
}

bool RunReport::all_pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json e{{"name", v.name}, {"pass", v.pass}};
    if (!v.detail.empty()) e["detail"] = v.detail;
    vs.push_back(e);
  }
  return {{"subcommand", subcommand}, {"inputs", inputs},   {"outputs", outputs},
          {"timing", timing},         {"verdicts", vs},    {"all_pass", all_pass()}};
}

namespace golden {

GradedElement eta_poly_z() {
  return jterm(-602, 0, {1, 5}) + jterm(432, 0, {2, 4}) + jterm(-120, 1, {1, 1, 3}) + jterm(168, 2, {1, 3}) +
         jterm(-48, 3, {3}) + jterm(1080, 0, {1, 1, 4}) + jterm(-1428, 1, {1, 4}) + jterm(-48, 1, {2, 3}) +
         jterm(384, 2, {4}) + jterm(344, 1, {5}) + jterm(-44, 0, {6});
}

GradedElement eta_poly_y() {
  return jterm(-40, 1, {1, 1, 3}) + jterm(56, 2, {1, 3}) + jterm(-16, 3, {3}) + jterm(300, 0, {1, 1, 4}) +
         jterm(-392, 1, {1, 4}) + jterm(-16, 1, {2, 3}) + jterm(104, 2, {4}) + jterm(-217, 0, {1, 5}) +
         jterm(120, 0, {2, 4}) + jterm(124, 1, {5}) + jterm(2, 0, {6});
}

std::vector<Rational> theta_y_z() {
  return {make_rational(193, 45), make_rational(-1271, 30), make_rational(1607, 12), make_rational(-120)};
}

std::vector<Rational> theta_y_y() {
  return {make_rational(161, 180), make_rational(-28, 3), make_rational(755, 24), make_rational(-30)};
}

std::vector<Rational> bernoulli_even() {
  return {make_rational(1, 6),       make_rational(-1, 30),      make_rational(1, 42),
          make_rational(-1, 30),     make_rational(5, 66),       make_rational(-691, 2730),
          make_rational(7, 6),       make_rational(-3617, 510),  make_rational(43867, 798),
          make_rational(-174611, 330), make_rational(854513, 138), make_rational(-236364091, 2730)};
}

}  // namespace golden

std::vector<Rational> theta_y_coefficients(const GradedElement& x) {
  std::vector<Rational> out;
  GradedElement theta = jac_gen("theta"), y1 = jac_gen("y1");
  for (unsigned i = 0; i <= 3; ++i) {
    GradedElement m = power(theta, 6 - i) * power(y1, i);
    out.push_back(x.coefficient(m.terms().begin()->first));
  }
  return out;
}

RunReport report_virtual_class() {
  RunReport r;
  r.subcommand = "compute-virtual-class";
  auto t0 = Clock::now();
  PipelineResult b1 = compute_b1();
  PipelineResult b0 = compute_b0(b1.value);
  VirtualClass v = compute_virtual_class(b0.value, b1.value);
  r.timing["seconds"] = seconds_since(t0);

  auto coefs = [](const std::vector<Rational>& c) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& x : c) j.push_back(str(x));
    return j;
  };
  auto tz = theta_y_coefficients(b1.theta_y), ty = theta_y_coefficients(b0.theta_y);
  r.outputs = {{"b1", str(b1.value)},
               {"b0", str(b0.value)},
               {"a", str(v.a)},
               {"slope", str(v.slope)},
               {"class", v.cls.to_json()},
               {"intermediates",
                {{"Z", {{"eta_poly", b1.eta_poly.to_string()}, {"theta_y", coefs(tz)}, {"total", str(b1.total)}}},
                 {"Y", {{"eta_poly", b0.eta_poly.to_string()}, {"theta_y", coefs(ty)}, {"total", str(b0.total)}}}}}};
  nlohmann::json pq = nlohmann::json::array();
  for (std::size_t i = 0; i < v.positivity_quantities.size(); ++i)
    pq.push_back({{"i", i + 2}, {"value", str(v.positivity_quantities[i])}});
  r.outputs["positivity_quantities"] = pq;
  r.outputs["positivity_note"] = "(6i+8)b0 - (i+1)a, reported only";

  r.check("total Z = 259314", b1.total == 259314, expect(b1.total, 259314));
  r.check("b1 = 11787", b1.value == 11787, expect(b1.value, 11787));
  r.check("total Y = 42141", b0.total == 42141, expect(b0.total, 42141));
  r.check("b0 = 2247", b0.value == 2247, expect(b0.value, 2247));
  r.check("a = 15177", v.a == 15177, expect(v.a, 15177));
  DivClass want = m13_class(15177, -2247);
  want.set("delta1", -11787);
  r.check("class = 3(5059 lambda - 749 delta0 - 3929 delta1)", same_known(v.cls, want, {"lambda", "delta0", "delta1"}), v.cls.to_string());
  r.check("slope = 5059/749", v.slope == make_rational(5059, 749), expect(v.slope, make_rational(5059, 749)));
  r.check("5059*13 < 749*88", 5059 * 13 < 749 * 88 && v.slope < make_rational(88, 13));
  r.check("eta polynomial Z", b1.eta_poly == golden::eta_poly_z(), b1.eta_poly.to_string());
  r.check("eta polynomial Y", b0.eta_poly == golden::eta_poly_y(), b0.eta_poly.to_string());
  r.check("theta/y1 reduction Z", tz == golden::theta_y_z() && b1.theta_y.terms().size() == 4);
  r.check("theta/y1 reduction Y", ty == golden::theta_y_y() && b0.theta_y.terms().size() == 4);
  r.check("divisible by 3", mpz_divisible_ui_p(b1.value.get_num_mpz_t(), 3) &&
                                mpz_divisible_ui_p(b0.value.get_num_mpz_t(), 3) &&
                                mpz_divisible_ui_p(v.a.get_num_mpz_t(), 3));
  return r;
}

RunReport report_count_bundles(int powers_max_n) {
  RunReport r;
  r.subcommand = "count-bundles";
  r.inputs["powers_max_n"] = powers_max_n;
  auto t0 = Clock::now();
  BundleCount bc = count_bundles();
  r.timing["count_seconds"] = seconds_since(t0);
  auto t1 = Clock::now();
  PowersOfHCheck pc = check_powers_of_h(powers_max_n);
  r.timing["powers_seconds"] = seconds_since(t1);
  auto bern = bernoulli_table(24);
  PorteousCount pr = porteous_resonance_count();

  nlohmann::json monos = nlohmann::json::array();
  const auto& gens = bc.f.ring()->generators();
  for (const auto& [m, c] : bc.f.terms()) {
    nlohmann::json e{{"coefficient", str(c)}};
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) e[gens[i].name] = m[i];
    monos.push_back(e);
  }
  nlohmann::json bj = nlohmann::json::array();
  for (int q = 2; q <= 24; q += 2) bj.push_back({{"q", q}, {"B", str(bern[q])}});
  r.outputs = {{"f_monomials", monos},
               {"integral_f", str(bc.integral_f)},
               {"integral_alpha_u", str(bc.integral_alpha_u)},
               {"integral_h_det", str(bc.integral_h_det)},
               {"count", bc.count.get_str()},
               {"convention", bc.convention},
               {"powers_of_h",
                {{"max_n", pc.max_n},
                 {"derived_first_failure", pc.derived_first_failure},
                 {"variant_first_failure", pc.variant_first_failure}}},
               {"bernoulli", bj},
               {"porteous",
                {{"porteous", pr.porteous.get_str()}, {"excess", pr.excess.get_str()}, {"difference", pr.difference.get_str()}}}};

  r.check("integral f = -6", bc.integral_f == -6, expect(bc.integral_f, -6));
  r.check("count = 3", bc.count == 3, bc.count.get_str());
  r.check("h^n closed form for n <= " + std::to_string(powers_max_n), pc.derived_first_failure == 0,
          "first failure " + std::to_string(pc.derived_first_failure));
  auto want = golden::bernoulli_even();
  bool bern_ok = true;
  for (int q = 2; q <= 24; q += 2) bern_ok = bern_ok && bern[q] == want[q / 2 - 1];
  r.check("Bernoulli B2..B24", bern_ok);
  r.check("Porteous (64, 61, 3)", pr.porteous == 64 && pr.excess == 61 && pr.difference == 3,
          pr.porteous.get_str() + ", " + pr.excess.get_str() + ", " + pr.difference.get_str());
  return r;
}

RunReport report_divisors() {
  RunReport r;
  r.subcommand = "divisor-report";
  auto t0 = Clock::now();
  VirtualClass v = compute_virtual_class(2247, 11787);
  GammaPushforward gp = solve_gamma_pushforward(v.cls);
  DivClass mp = mp_class(gp.gamma_push);
  DivClass theta = theta_class_r13(gp.gamma_push);
  KodairaReport kr = kodaira_check_r13(theta);
  Rational mp_slope = slope(mp);
  M13_9Report m9 = m13_9_check(mp_slope);
  r.timing["seconds"] = seconds_since(t0);

  nlohmann::json bounds = nlohmann::json::array();
  for (auto& b : kr.boundary_bounds) bounds.push_back(str(b));
  r.inputs = {{"virtual_class", v.cls.to_json()}};
  r.outputs = {{"resonance", gp.resonance.to_json()},
               {"hurwitz", gp.hurwitz.to_json()},
               {"gamma_push", gp.gamma_push.to_json()},
               {"mp", mp.to_json()},
               {"mp_slope", str(mp_slope)},
               {"theta", theta.to_json()},
               {"kodaira",
                {{"combination", kr.combination.to_json()},
                 {"lambda_coeff", str(kr.lambda_coeff)},
                 {"lambda_below_13", kr.lambda_below_13},
                 {"boundary_bounds", bounds},
                 {"boundary_bounds_ok", kr.boundary_bounds_ok},
                 {"canonical_minus_d", kr.canonical_minus_d.to_json()},
                 {"canonical_big", kr.canonical_big},
                 {"pullback_identity_ok", kr.pullback_identity_ok}}},
               {"m13_9", {{"lhs", str(m9.lhs)}, {"margin", str(m9.margin)}, {"holds", m9.holds}}}};

  DivClass want_gamma = m13_class(make_rational(11288, 143), make_rational(-1582, 143));
  DivClass want_mp = m13_class(make_rational(8218, 143), make_rational(-1220, 143));
  DivClass want_theta = DivClass::r13();
  want_theta.set("lambda", make_rational(10430, 143))
      .set("delta0'", make_rational(-1582, 143))
      .set("delta0''", make_rational(-1582, 143))
      .set("delta0ram", make_rational(-5899, 286));
  r.check("gamma pushforward (11288 lambda - 1582 delta0)/143", same_known(gp.gamma_push, want_gamma, {"lambda", "delta0"}),
          gp.gamma_push.to_string());
  r.check("MP class (8218 lambda - 1220 delta0)/143", same_known(mp, want_mp, {"lambda", "delta0"}), mp.to_string());
  r.check("MP slope 4109/610 < 88/13", mp_slope == make_rational(4109, 610) && mp_slope < make_rational(88, 13),
          str(mp_slope));
  r.check("Theta class", same_known(theta, want_theta, {"lambda", "delta0'", "delta0''", "delta0ram"}), theta.to_string());
  r.check("Theta delta0' = delta0''", theta.at("delta0'") == theta.at("delta0''"));
  r.check("Kodaira lambda coefficient 4362/337 < 13",
          kr.lambda_coeff == make_rational(4362, 337) && kr.lambda_below_13, str(kr.lambda_coeff));
  bool bounds_ok = kr.boundary_bounds.size() == 6;
  for (auto& b : kr.boundary_bounds) bounds_ok = bounds_ok && b >= 3;
  r.check("six boundary bounds >= 3", bounds_ok && kr.boundary_bounds_ok);
  r.check("2(4109/610) - 9/17 < 13", m9.holds && m9.lhs == 2 * make_rational(4109, 610) - make_rational(9, 17),
          str(m9.lhs));
  return r;
}

nlohmann::json CaseSummary::to_json() const {
  nlohmann::json j{{"index", index}, {"name", name}, {"ok", ok}, {"escalations", escalations}};
  if (!error.empty()) j["error"] = error;
  if (!min_margin.empty()) j["min_margin"] = min_margin;
  j["one_more_lemma"] = one_more_lemma;
  j["omitted"] = omitted;
  return j;
}

CaseSummary summarize(std::size_t index, const std::string& name, const CaseResult& r) {
  CaseSummary s;
  s.index = index;
  s.name = name;
  s.ok = r.ok;
  s.error = r.error;
  s.escalations = r.escalations;
  if (r.certificate) s.min_margin = to_string(r.certificate->min_margin);
  s.one_more_lemma = r.one_more_lemma;
  if (r.selection) s.omitted = r.selection->omitted;
  return s;
}

std::vector<CaseSummary> run_batch(const std::vector<FamilyCase>& cases, int jobs,
                                   const std::function<void(std::size_t, const CaseResult&)>& hook) {
  std::vector<CaseSummary> out(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
      CaseResult res = prove_case(cases[i].input);
      if (hook) hook(i, res);
      out[i] = summarize(i, cases[i].name, res);
    }
  };
  int n = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

RunReport report_prove_case(const CaseInput& input, const nlohmann::json& input_json) {
  RunReport r;
  r.subcommand = "prove-smrc";
  r.inputs = input_json;
  r.inputs["scale_base"] = input.scale_base.get_str();
  auto t0 = Clock::now();
  CaseResult res = prove_case(input);
  r.timing["seconds"] = seconds_since(t0);
  r.outputs = res.to_json();
  r.check("certified", res.ok, res.error);
  if (res.ok) {
    r.check("positive margins", res.certificate && res.certificate->min_margin > 0);
    if (!input.switching) r.check("one-more lemma", res.one_more_lemma);
  }
  return r;
}

RunReport report_enumerate(const EnumerateOptions& opt) {
  RunReport r;
  r.subcommand = "enumerate";
  r.inputs = {{"genus", opt.genus},
              {"family", to_string(opt.family)},
              {"scale_base", opt.scale_base.get_str()},
              {"jobs", opt.jobs},
              {"all", opt.all},
              {"stride", opt.stride}};
  auto t0 = Clock::now();
  std::vector<FamilyCase> all = family_cases(opt.family, opt.genus, opt.scale_base);
  std::vector<FamilyCase> cases;
  std::size_t stride = opt.all ? 1 : std::max<std::size_t>(1, opt.stride);
  for (std::size_t i = 0; i < all.size(); i += stride) cases.push_back(std::move(all[i]));
  auto summaries = run_batch(cases, opt.jobs);
  r.timing["seconds"] = seconds_since(t0);

  std::size_t ok = 0, lemma = 0, escal = 0;
  std::map<std::string, std::size_t> by_error;
  Rational min_margin = 0;
  bool have_margin = false;
  for (auto& s : summaries) {
    if (s.ok) {
      ++ok;
      Rational m = parse_rational(s.min_margin);
      if (!have_margin || m < min_margin) min_margin = m;
      have_margin = true;
    } else {
      by_error[s.error.substr(0, s.error.find(':'))]++;
    }
    if (s.one_more_lemma) ++lemma;
    if (s.escalations) ++escal;
  }
  r.outputs = {{"cases", summaries.size()},
               {"family_size", all.size()},
               {"certified", ok},
               {"one_more_lemma", lemma},
               {"escalated", escal},
               {"failures_by_stage", by_error}};
  if (have_margin) r.outputs["min_margin"] = str(min_margin);
  nlohmann::json failed = nlohmann::json::array();
  for (auto& s : summaries)
    if (!s.ok) failed.push_back(s.to_json());
  r.outputs["failed"] = failed;
  if (opt.include_cases) {
    nlohmann::json cj = nlohmann::json::array();
    for (auto& s : summaries) cj.push_back(s.to_json());
    r.outputs["case_list"] = cj;
  }

  std::string tally = std::to_string(ok) + "/" + std::to_string(summaries.size());
  if (opt.family == Family::VertexAvoiding) {
    r.check("all cases certified", ok == summaries.size(), tally);
    r.check("one-more lemma on all cases", lemma == summaries.size());
    r.check("strictly positive margins", have_margin && min_margin > 0);
  } else {
    // Families outside the vertex-avoiding suite are reported, not gated.
    r.outputs["gated"] = false;
  }
  return r;
}

RunReport report_regress_all(int jobs, bool with_enumeration, const Integer& scale_base) {
  RunReport r;
  r.subcommand = "regress-all";
  r.inputs = {{"jobs", jobs}, {"with_enumeration", with_enumeration}, {"scale_base", scale_base.get_str()}};
  auto t0 = Clock::now();
  auto absorb = [&](const RunReport& sub) {
    r.outputs[sub.subcommand] = sub.outputs;
    r.timing[sub.subcommand] = sub.timing;
    for (auto& v : sub.verdicts) r.check(sub.subcommand + ": " + v.name, v.pass, v.detail);
  };
  absorb(report_virtual_class());
  absorb(report_count_bundles());
  absorb(report_divisors());

  // Worked example: the default omission and the labels on the loops.
  Tableau ex{{1, 3, 4, 8, 9, 10}, {2, 5, 7, 11, 12, 13}, 6, 13};
  CaseResult wr = prove_case(case_from_tableau(ex, scale_base));
  r.outputs["worked_example"] = wr.to_json();
  r.check("worked example certified", wr.ok, wr.error);

  if (with_enumeration) {
    for (int g : {13, 12, 11}) {
      EnumerateOptions opt;
      opt.genus = g;
      opt.jobs = jobs;
      opt.scale_base = scale_base;
      RunReport e = report_enumerate(opt);
      std::string key = "enumerate-g" + std::to_string(g);
      r.outputs[key] = e.outputs;
      r.timing[key] = e.timing;
      std::size_t expected = g == 13 ? 1716 : g == 12 ? 1584 : 1452;
      r.check(key + ": case count " + std::to_string(expected), e.outputs["cases"] == expected);
      for (auto& v : e.verdicts) r.check(key + ": " + v.name, v.pass, v.detail);
    }
  }
  r.timing["seconds"] = seconds_since(t0);
  return r;
}

}  // namespace g13
