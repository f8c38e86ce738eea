// Acceptance runner: one PASS/FAIL line per criterion, with the measured time
// against its limit. Exit status is 0 when the failing criteria are exactly
// the ones passed with --known-failures (default: none).

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "artifact/divisors.hpp"
#include "artifact/hecke.hpp"
#include "artifact/jacobian.hpp"
#include "artifact/reports.hpp"
#include "random_pl.hpp"

using namespace g13;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string failed_names(const RunReport& r) {
  std::string out;
  for (const auto& v : r.verdicts)
    if (!v.pass) out += (out.empty() ? "" : "; ") + v.name + (v.detail.empty() ? "" : " (" + v.detail + ")");
  return out;
}

Outcome virtual_class() {
  PipelineResult z = compute_b1();
  PipelineResult y = compute_b0(z.value);
  VirtualClass v = compute_virtual_class(y.value, z.value);
  bool ok = z.total == 259314 && z.value == 11787 && y.total == 42141 && y.value == 2247 && v.a == 15177 &&
            v.cls.at("lambda") == 3 * 5059 && v.cls.at("delta0") == -3 * 749 && v.cls.at("delta1") == -3 * 3929 &&
            v.slope == make_rational(5059, 749) && 5059 * 13 < 749 * 88;
  return {ok, "b1 = " + to_string(z.value) + ", b0 = " + to_string(y.value) + ", a = " + to_string(v.a) +
                  ", slope = " + to_string(v.slope)};
}

Outcome intermediates() {
  PipelineResult z = compute_b1();
  PipelineResult y = compute_b0(z.value);
  bool eta = z.eta_poly == golden::eta_poly_z() && y.eta_poly == golden::eta_poly_y();
  auto tz = theta_y_coefficients(z.theta_y), ty = theta_y_coefficients(y.theta_y);
  bool red = tz == golden::theta_y_z() && ty == golden::theta_y_y() && z.theta_y.terms().size() == 4 &&
             y.theta_y.terms().size() == 4;
  std::string d = "theta/y1 Z:";
  for (auto& c : tz) d += " " + to_string(c);
  d += ", Y:";
  for (auto& c : ty) d += " " + to_string(c);
  return {eta && red, std::string(eta ? "eta polynomials match, " : "eta polynomials differ, ") + d};
}

Outcome hecke() {
  BundleCount bc = count_bundles();
  PowersOfHCheck pc = check_powers_of_h(72);
  auto b = bernoulli_table(24);
  auto want = golden::bernoulli_even();
  int bern_ok = 0;
  for (int q = 2; q <= 24; q += 2) bern_ok += b[q] == want[q / 2 - 1];
  bool ok = bc.integral_f == -6 && bc.count == 3 && pc.derived_first_failure == 0 && bern_ok == 12;
  return {ok, "integral f = " + to_string(bc.integral_f) + ", count = " + bc.count.get_str() +
                  ", h^n closed form agrees for n <= 72: " + (pc.derived_first_failure == 0 ? "yes" : "no") +
                  ", Bernoulli " + std::to_string(bern_ok) + "/12"};
}

Outcome porteous() {
  PorteousCount p = porteous_resonance_count();
  return {p.porteous == 64 && p.excess == 61 && p.difference == 3,
          "(" + p.porteous.get_str() + ", " + p.excess.get_str() + ", " + p.difference.get_str() + ")"};
}

Outcome classes() {
  RunReport r = report_divisors();
  std::set<std::string> needed{"gamma pushforward (11288 lambda - 1582 delta0)/143",
                               "MP class (8218 lambda - 1220 delta0)/143", "MP slope 4109/610 < 88/13",
                               "Theta class"};
  bool ok = true;
  for (auto& v : r.verdicts)
    if (needed.count(v.name)) ok = ok && v.pass;
  return {ok, ok ? "gamma pushforward, MP (slope 4109/610) and Theta classes match" : failed_names(r)};
}

Outcome kodaira() {
  RunReport r = report_divisors();
  std::set<std::string> needed{"Kodaira lambda coefficient 4362/337 < 13", "six boundary bounds >= 3",
                               "2(4109/610) - 9/17 < 13"};
  bool ok = true;
  for (auto& v : r.verdicts)
    if (needed.count(v.name)) ok = ok && v.pass;
  return {ok, "lambda coefficient " + r.outputs["kodaira"]["lambda_coeff"].get<std::string>() +
                  ", M13,9 margin " + r.outputs["m13_9"]["margin"].get<std::string>()};
}

Outcome independence_suite() {
  std::ostringstream d;
  bool ok = true;
  for (int g : {13, 12, 11}) {
    auto cases = family_cases(Family::VertexAvoiding, g);
    auto sums = run_batch(cases, workers());
    std::size_t good = 0;
    for (auto& s : sums)
      if (s.ok && !s.min_margin.empty() && parse_rational(s.min_margin) > 0) ++good;
    ok = ok && good == sums.size() && !sums.empty();
    d << "g=" << g << ": " << good << "/" << sums.size() << " certified" << (g == 11 ? "" : ", ");
  }
  return {ok, d.str()};
}

Outcome worked_example() {
  Tableau t{{1, 3, 4, 8, 9, 10}, {2, 5, 7, 11, 12, 13}, 6, 13};
  CaseInput in = case_from_tableau(t);
  in.omit_override = "23";
  CaseResult r = prove_case(in);
  if (!r.ok) return {false, "case did not certify: " + r.error};

  // Region labels of the figure, place by place.
  std::map<std::string, std::multiset<std::string>> figure{
      {"bridge:1", {"55", "45"}}, {"loop:1", {"35"}},  {"loop:2", {"25"}},   {"loop:3", {"44"}},
      {"loop:4", {"34"}},         {"loop:5", {"33"}},  {"loop:6", {"15"}},   {"bridge:7", {"24"}},
      {"loop:7", {"14"}},         {"bridge:8", {"05"}}, {"loop:8", {"22"}},  {"loop:9", {"13"}},
      {"loop:10", {"04"}},        {"loop:11", {"03"}}, {"loop:12", {"12"}},  {"loop:13", {"11"}},
      {"bridge:14", {"02", "01", "00"}}};
  std::map<std::string, std::multiset<std::string>> engine;
  for (auto& a : r.build->log) engine[a.place].insert(a.label);
  std::vector<std::string> diffs;
  for (auto& [place, labels] : figure) {
    if (engine[place] == labels) continue;
    std::string got, want;
    for (auto& l : engine[place]) got += (got.empty() ? "" : ",") + l;
    for (auto& l : labels) want += (want.empty() ? "" : ",") + l;
    diffs.push_back(place + " has " + got + " (figure " + want + ")");
  }

  GraphDivisor dprime = r.chips->divisor * 2 + pl_divisor(*r.theta);
  int on_b4 = 0;
  for (auto& [p, m] : dprime.points())
    if (p.edge.kind == EdgeKind::Bridge && p.edge.k == 4 && m == 2) ++on_b4;
  bool divisor_ok = dprime.degree() == 32 && dprime.effective() && dprime.points().size() == 31 && on_b4 == 1;

  std::ostringstream d;
  d << "deg D' = " << dprime.degree() << " on " << dprime.points().size() << " points, multiplicity-2 points on beta4: "
    << on_b4 << "; labels: ";
  if (diffs.empty()) {
    d << "all match";
  } else {
    d << diffs.size() << " places differ: ";
    for (std::size_t i = 0; i < diffs.size(); ++i) d << (i ? "; " : "") << diffs[i];
    d << ". After equalizing at w_k, the figure's 03 on loop 11 and 11 on loop 13 are never the unique minimum "
         "there, and the other two places follow from those";
  }
  return {divisor_ok && diffs.empty(), d.str()};
}

Outcome oracles() {
  GradedElement eta = jac_gen("eta"), theta = jac_gen("theta"), y1 = jac_gen("y1");
  bool top_ok = true;
  for (int i = 0; i <= 6; ++i) {
    long want = 1;
    for (int k = 0; k < i; ++k) want *= 12 - k;
    top_ok = top_ok && evaluate_top(eta * power(theta, i) * power(y1, 6 - i)) == want;
  }
  std::mt19937 rng(1000);
  auto g = test_support::small_graph();
  int good = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PLFunction f = test_support::random_pl(g, rng), h = test_support::random_pl(g, rng);
    GraphDivisor df = pl_divisor(f);
    good += df.degree() == 0 && pl_divisor(f + h) == df + pl_divisor(h);
  }
  return {top_ok && good == 1000, std::string("factorial oracle ") + (top_ok ? "agrees" : "disagrees") +
                                      ", PL properties hold on " + std::to_string(good) + "/1000"};
}

Outcome openness() {
  auto all = enumerate_tableaux(13);
  std::mt19937 rng(424242);
  int held = 0, tried = 0;
  for (int c = 0; c < 20; ++c) {
    CaseResult r = prove_case(case_from_tableau(all[(c * 85 + 7) % all.size()]));
    if (!r.ok) return {false, "sample case did not certify: " + r.error};
    std::vector<PLFunction> psi;
    for (auto& cand : r.selection->retained) psi.push_back(cand.f);
    std::vector<Rational> b = r.build->coefficients;
    Rational half = r.certificate->min_margin / 2;
    // Offsets drawn from the open interval (−half, half) on a grid of 2·10⁶ steps.
    std::uniform_int_distribution<long> step(-999999, 999999);
    for (int p = 0; p < 5; ++p, ++tried) {
      std::vector<Rational> bp = b;
      for (auto& x : bp) x += half * make_rational(step(rng), 1000000);
      held += certify_independence(psi, bp).ok;
    }
  }
  return {held == tried && tried == 100, std::to_string(held) + "/" + std::to_string(tried) + " perturbations certified"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  std::vector<int> only;
  app.add_option("--known-failures", known, "Criteria documented as failing");
  app.add_option("--only", only, "Run just these criteria");
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> criteria{
      {1, "virtual class", 10, virtual_class},
      {2, "intermediate polynomials and theta/y1 reductions", 10, intermediates},
      {3, "bundle count, powers of h, Bernoulli table", 300, hecke},
      {4, "Porteous and excess", 1, porteous},
      {5, "pushforward, MP and Theta classes", 1, classes},
      {6, "Kodaira and M13,9 checks", 1, kodaira},
      {7, "independence suite g = 13, 12, 11", 600, independence_suite},
      {8, "worked example", 5, worked_example},
      {9, "oracle checks", 30, oracles},
      {10, "openness under perturbation", 60, openness},
  };

  std::set<int> failed;
  for (auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && s < c.limit_s;
    if (!pass) failed.insert(c.id);
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << o.detail << " [" << s << " s, limit "
         << c.limit_s << " s]";
    std::cout << line.str() << std::endl;
  }
  std::set<int> expected(known.begin(), known.end());
  if (!only.empty()) {
    std::set<int> in_run(only.begin(), only.end()), keep;
    for (int k : expected)
      if (in_run.count(k)) keep.insert(k);
    expected = keep;
  }
  std::cout << failed.size() << " of " << (only.empty() ? criteria.size() : only.size()) << " criteria failed";
  if (!expected.empty()) std::cout << " (documented failures:" << [&] {
      std::string s;
      for (int k : expected) s += " " + std::to_string(k);
      return s;
    }() << ")";
  std::cout << "\n";
  return failed == expected ? 0 : 1;
}
