#include <doctest.h>

#include "artifact/reports.hpp"

using namespace g13;

namespace {

void check_all_pass(const RunReport& r) {
  for (const auto& v : r.verdicts) CHECK_MESSAGE(v.pass, std::string(r.subcommand + ": " + v.name + " " + v.detail));
  CHECK(r.all_pass());
}

}  // namespace

TEST_CASE("report shape") {
  RunReport r;
  r.subcommand = "x";
  r.check("a", true);
  r.check("b", false, "why");
  nlohmann::json j = r.to_json();
  for (const char* key : {"subcommand", "inputs", "outputs", "timing", "verdicts", "all_pass"}) CHECK(j.contains(key));
  CHECK(j["all_pass"] == false);
  CHECK(j["verdicts"][1]["detail"] == "why");
}

TEST_CASE("symbolic reports pass their reference checks") {
  RunReport v = report_virtual_class();
  check_all_pass(v);
  CHECK(v.outputs["b1"] == "11787");
  CHECK(v.outputs["b0"] == "2247");
  CHECK(v.outputs["a"] == "15177");
  CHECK(v.outputs["slope"] == "5059/749");
  CHECK(v.outputs["positivity_quantities"][0]["value"] == "-591");

  RunReport b = report_count_bundles(16);
  check_all_pass(b);
  CHECK(b.outputs["count"] == "3");
  CHECK(b.outputs["integral_f"] == "-6");

  RunReport d = report_divisors();
  check_all_pass(d);
  CHECK(d.outputs["mp_slope"] == "4109/610");
}

TEST_CASE("outputs are deterministic") {
  CHECK(report_divisors().outputs.dump() == report_divisors().outputs.dump());
  CHECK(report_virtual_class().outputs.dump() == report_virtual_class().outputs.dump());
}

TEST_CASE("batch results merge by case index for any worker count") {
  auto all = family_cases(Family::VertexAvoiding, 12);
  std::vector<FamilyCase> cases;
  for (std::size_t i = 0; i < all.size(); i += 53) cases.push_back(all[i]);
  auto one = run_batch(cases, 1), three = run_batch(cases, 3);
  REQUIRE(one.size() == cases.size());
  REQUIRE(three.size() == cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CHECK(one[i].index == i);
    CHECK(one[i].to_json().dump() == three[i].to_json().dump());
  }
}

TEST_CASE("enumerate report on a stride") {
  EnumerateOptions opt;
  opt.genus = 11;
  opt.all = false;
  opt.stride = 97;
  opt.jobs = 2;
  RunReport r = report_enumerate(opt);
  check_all_pass(r);
  CHECK(r.outputs["family_size"] == 1452);
  CHECK(r.outputs["cases"] == 15);
}

TEST_CASE("regress-all without the exhaustive runs") {
  RunReport r = report_regress_all(1, false);
  check_all_pass(r);
  CHECK(r.outputs.contains("worked_example"));
}
