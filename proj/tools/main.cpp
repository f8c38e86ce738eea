#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "artifact/reports.hpp"

using namespace g13;

namespace {

// Bad user input (exit 2), as opposed to a failure inside a computation.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Integer parse_scale(const std::string& s) {
  Integer b;
  if (b.set_str(s, 10) != 0 || b < 2) throw InputError("--scale-base must be an integer >= 2");
  return b;
}

// {"top": [...], "bottom": [...], "lingering": l, "genus": g} with optional
// "switching": {"h": h} (on the lingering loop) and "omit": "ij".
CaseInput case_from_json(const nlohmann::json& j, const Integer& scale) {
  Tableau t;
  try {
    t = tableau_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  CaseInput in = case_from_tableau(t, scale);
  try {
    if (j.contains("switching")) {
      in.switching = SwitchingWitness{j["switching"].value("loop", t.lingering), j["switching"].at("h").get<int>()};
    }
    if (j.contains("omit")) in.omit_override = j.at("omit").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("tableau json: ") + e.what());
  }
  return in;
}

int emit(const RunReport& r, const std::string& out) {
  std::string text = r.to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 1;
    }
    f << text;
  }
  return r.all_pass() ? 0 : 1;
}

int emit_error(const std::string& sub, const char* kind, const std::string& what, const std::string& out, int code) {
  nlohmann::json j{{"subcommand", sub}, {"error", {{"kind", kind}, {"message", what}}}, {"all_pass", false}};
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out) << text;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations and tropical independence certificates for genus 13"};
  app.require_subcommand(1);

  std::string out, scale_text = "10000", tableau_file, family_name = "vertex-avoiding";
  int genus = 13, jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool all = false, list_cases = false, quick = false;
  std::size_t stride = 1;
  int powers_n = 72;

  auto common = [&](CLI::App* s) {
    s->add_option("--out", out, "Write the report here instead of stdout");
    s->add_option("--scale-base", scale_text, "Base B of the edge-length tower");
    s->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* prove = app.add_subcommand("prove-smrc", "Certify one tableau case");
  prove->add_option("--tableau", tableau_file, "Tableau JSON file")->required();
  common(prove);

  auto* enumerate = app.add_subcommand("enumerate", "Certify a family of cases");
  enumerate->add_option("--genus", genus, "Genus")->check(CLI::IsMember({11, 12, 13}));
  enumerate->add_flag("--all", all, "Every case of the family");
  enumerate->add_option("--stride", stride, "Without --all, take every n-th case")->check(CLI::PositiveNumber);
  enumerate->add_option("--family", family_name,
                        "vertex-avoiding, switching, ramified-right, ramified-left, decreasing-loop, decreasing-bridge");
  enumerate->add_flag("--list-cases", list_cases, "Include one summary per case");
  common(enumerate);

  auto* virt = app.add_subcommand("compute-virtual-class", "Virtual class of the degeneracy divisor");
  virt->add_option("--out", out, "Write the report here instead of stdout");

  auto* bundles = app.add_subcommand("count-bundles", "Count of rank-two bundles and related checks");
  bundles->add_option("--powers-max-n", powers_n, "Check the closed form for h^n up to this n");
  bundles->add_option("--out", out, "Write the report here instead of stdout");

  auto* divisors = app.add_subcommand("divisor-report", "Derived divisor classes and inequalities");
  divisors->add_option("--out", out, "Write the report here instead of stdout");

  auto* regress = app.add_subcommand("regress-all", "All reference values and the exhaustive runs");
  regress->add_flag("--quick", quick, "Skip the exhaustive enumeration");
  common(regress);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string name = sub->get_name();
  try {
    Integer scale = parse_scale(scale_text);
    if (sub == prove) {
      nlohmann::json j = read_json_file(tableau_file);
      CaseInput in = case_from_json(j, scale);
      return emit(report_prove_case(in, j), out);
    }
    if (sub == enumerate) {
      auto fam = parse_family(family_name);
      if (!fam) throw InputError("unknown family " + family_name);
      EnumerateOptions opt;
      opt.genus = genus;
      opt.family = *fam;
      opt.scale_base = scale;
      opt.jobs = jobs;
      opt.all = all;
      opt.stride = stride;
      opt.include_cases = list_cases;
      if (opt.family != Family::VertexAvoiding && genus != 13) throw InputError("this family needs --genus 13");
      return emit(report_enumerate(opt), out);
    }
    if (sub == virt) return emit(report_virtual_class(), out);
    if (sub == bundles) return emit(report_count_bundles(powers_n), out);
    if (sub == divisors) return emit(report_divisors(), out);
    if (sub == regress) return emit(report_regress_all(jobs, !quick, scale), out);
  } catch (const InputError& e) {
    return emit_error(name, "input", e.what(), out, 2);
  } catch (const std::exception& e) {
    return emit_error(name, "computation", e.what(), out, 1);
  }
  return 2;
}
