// contactmax: batch front-end for the contact-form / Maxwell verification engine.
//
//   contactmax verify <scenario.json | builtin-name> [--samples N] [--seed S] [--tol T] [--out report.json]
//   contactmax examples [--export DIR]
//   contactmax eval --expr <string> --at x,y,z
//
// Exit codes: 0 all requested checks passed, 1 a check failed (the report is
// still written), 2 invalid input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "contactmax/error.hpp"
#include "contactmax/expr.hpp"
#include "contactmax/scenario.hpp"

namespace cm = contactmax;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

cm::Point parse_point(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  double c[3];
  int n = 0;
  while (std::getline(ss, part, ',')) {
    if (n == 3) throw cm::Error("--at expects three comma-separated coordinates");
    std::size_t used = 0;
    c[n] = std::stod(part, &used);
    if (part.find_first_not_of(" \t", used) != std::string::npos) throw cm::Error("bad coordinate '" + part + "'");
    ++n;
  }
  if (n != 3) throw cm::Error("--at expects three comma-separated coordinates");
  return cm::Point{c[0], c[1], c[2]};
}

int cmd_verify(const std::string& target, const cm::RunOverrides& overrides, const std::string& out_path) {
  cm::Scenario scenario;
  if (std::filesystem::exists(target)) {
    scenario = cm::load_scenario_file(target);
  } else if (const cm::Scenario* s = cm::find_builtin(target)) {
    scenario = *s;
  } else {
    throw cm::Error("no scenario file or built-in scenario named '" + target + "'");
  }
  const cm::RunResult result = cm::run_scenario(scenario, overrides);
  const std::string text = cm::dump_report(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw cm::Error("cannot write report to '" + out_path + "'");
    out << text;
  }
  return result.passed ? 0 : kExitFail;
}

int cmd_examples(const std::string& export_dir) {
  for (const auto& s : cm::builtin_scenarios()) {
    std::cout << s.name << "  " << s.description << "\n";
    if (export_dir.empty()) continue;
    const auto path = std::filesystem::path(export_dir) / (s.name + ".json");
    std::ofstream f(path);
    if (!f) throw cm::Error("cannot write " + path.string());
    f << cm::scenario_to_json(s).dump(2) << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& expr, const std::string& at) {
  const double v = cm::parse(expr).evaluate(parse_point(at));
  std::printf("%.17g\n", v);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-form to Maxwell-solution verification engine"};
  app.require_subcommand(1);

  std::string target;
  std::string out_path;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* verify = app.add_subcommand("verify", "Run a scenario file or built-in scenario and write a JSON report");
  verify->add_option("scenario", target, "Scenario JSON file or built-in scenario name")->required();
  auto* o_samples = verify->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  auto* o_seed = verify->add_option("--seed", seed, "Sampler seed");
  auto* o_tol = verify->add_option("--tol", tol, "Pass tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "Report path (default: stdout)");

  std::string export_dir;
  auto* examples = app.add_subcommand("examples", "List the built-in scenarios");
  examples->add_option("--export", export_dir, "Also write each scenario as <name>.json into this directory");

  std::string expr;
  std::string at;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression at a point");
  eval->add_option("--expr", expr, "Expression text")->required();
  eval->add_option("--at", at, "Point x,y,z")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (verify->parsed()) {
      cm::RunOverrides ov;
      if (*o_samples) ov.samples = samples;
      if (*o_seed) ov.seed = seed;
      if (*o_tol) ov.tol = tol;
      return cmd_verify(target, ov, out_path);
    }
    if (examples->parsed()) return cmd_examples(export_dir);
    if (eval->parsed()) return cmd_eval(expr, at);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
