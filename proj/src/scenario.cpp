#include "contactmax/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>

#include "contactmax/contact.hpp"
#include "contactmax/maxwell.hpp"
#include "contactmax/metric.hpp"

namespace contactmax {

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error("scenario schema error at '" + path + "': " + message), path_(std::move(path)) {}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> v{"contact", "beltrami", "adapted", "theorem1", "maxwell"};
  return v;
}

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k{"name",  "description",   "alpha",   "metric", "omega", "domain", "checks",
                                       "beta_override", "samples", "seed", "tol", "expect"};
  return k;
}

void check_expression(const std::string& text, const std::string& path) {
  try {
    (void)parse(text);
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

template <std::size_t N>
std::array<std::string, N> expression_array(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != N) throw SchemaError(path, "expected an array of " + std::to_string(N) + " expression strings");
  std::array<std::string, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_string()) throw SchemaError(p, "expected an expression string");
    out[i] = v[i].get<std::string>();
    check_expression(out[i], p);
  }
  return out;
}

std::array<double, 3> real_triple(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw SchemaError(path, "expected an array of 3 numbers");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw SchemaError(path + "[" + std::to_string(i) + "]", "expected a number");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i])) throw SchemaError(path + "[" + std::to_string(i) + "]", "must be finite");
  }
  return out;
}

std::array<std::string, 6> metric_entries(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "euclidean") return {"1", "0", "0", "1", "0", "1"};
    throw SchemaError("metric", "expected \"euclidean\" or an array of 6 (upper triangle) or 9 expression strings");
  }
  if (v.is_array() && v.size() == 6) return expression_array<6>(v, "metric");
  if (v.is_array() && v.size() == 9) {
    const auto full = expression_array<9>(v, "metric");
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (!parse(full[3 * i + j]).same_as(parse(full[3 * j + i]))) {
          throw SchemaError("metric[" + std::to_string(3 * j + i) + "]", "metric must be symmetric");
        }
      }
    }
    return {full[0], full[1], full[2], full[4], full[5], full[8]};
  }
  throw SchemaError("metric", "expected \"euclidean\" or an array of 6 (upper triangle) or 9 expression strings");
}

OrderedJson point_json(const Point& p) { return OrderedJson::array({p.x, p.y, p.z}); }

OrderedJson stat_json(const ResidualStat& s) {
  return OrderedJson{{"max", s.max}, {"mean", s.mean}, {"scale", s.scale}};
}

OrderedJson residual_report_json(const ResidualReport& rep, double tol) {
  OrderedJson residuals = OrderedJson::object();
  OrderedJson witness = OrderedJson::object();
  for (const auto& [name, stat] : rep.entries()) {
    residuals[name] = stat_json(stat);
    witness[name] = point_json(stat.argmax);
  }
  return OrderedJson{{"pass", rep.passes(tol)}, {"residuals", residuals}, {"witness", witness}};
}

OrderedJson form_json(const KForm& w) {
  OrderedJson a = OrderedJson::array();
  for (const auto& c : w.coefficients()) a.push_back(c.to_string());
  return a;
}

OrderedJson metric_json(const MetricField& g) {
  OrderedJson a = OrderedJson::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) a.push_back(g(i, j).to_string());
  }
  return a;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

MetricField build_metric(const Scenario& s) {
  if (!s.metric) return MetricField::euclidean();
  std::array<Expression, 6> e;
  for (int i = 0; i < 6; ++i) e[i] = parse((*s.metric)[i]);
  return MetricField(e);
}

OrderedJson run_check(const std::string& check, const Scenario& s, const KForm& alpha, const MetricField& g,
                      const SampleSet& samples, double tol) {
  if (check == "contact") {
    const ContactReport r = contact_defect(alpha, samples, tol);
    return OrderedJson{{"pass", r.is_contact},
                       {"residuals", {{"min_abs", r.min_abs}, {"max_abs", r.max_abs}, {"threshold", r.threshold}}},
                       {"sign", to_string(r.sign)},
                       {"witness", {{"min_abs", point_json(r.witness)}}}};
  }
  if (check == "beltrami") {
    const BeltramiEstimate b = beltrami_factor(g, alpha, samples, tol);
    double lo = b.factor_values.front();
    double hi = lo;
    for (double f : b.factor_values) {
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    OrderedJson witness{{"max_residual", point_json(b.residual_witness)},
                        {"min_abs_factor", point_json(b.min_factor_witness)}};
    if (b.degenerate_witness) witness["degenerate"] = point_json(*b.degenerate_witness);
    OrderedJson out{{"pass", b.is_beltrami},
                    {"residuals", {{"max_residual", b.max_residual}}},
                    {"factor", {{"min", lo}, {"max", hi}, {"mean", b.constant_value}, {"min_abs", b.min_abs_factor}}},
                    {"is_rotational", b.is_rotational},
                    {"is_constant", b.is_constant}};
    if (b.is_constant) out["constant_value"] = b.constant_value;
    out["witness"] = witness;
    return out;
  }
  if (check == "adapted") {
    const AdaptedReport r = check_adapted(g, alpha, samples, tol);
    return OrderedJson{{"pass", r.adapted},
                       {"residuals", {{"residual_star", r.residual_star}, {"residual_norm", r.residual_norm}}},
                       {"witness", {{"residual_star", point_json(r.witness_star)}, {"residual_norm", point_json(r.witness_norm)}}}};
  }
  if (check == "theorem1") {
    const Theorem1Result t = verify_theorem1(alpha, g, s.omega, samples, tol);
    OrderedJson out = residual_report_json(t.report, tol);
    out["media_metric"] = metric_json(t.media_metric);
    out["beta"] = form_json(t.beta);
    return out;
  }
  // maxwell
  const KForm beta = s.beta_override ? KForm::parse(1, *s.beta_override) : build_beta(g, alpha, s.omega);
  const ResidualReport rep = maxwell_residuals(alpha, beta, Media{g, g}, s.omega, samples);
  OrderedJson out = residual_report_json(rep, tol);
  out["beta"] = form_json(beta);
  return out;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "scenario must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().count(key)) throw SchemaError(key, "unknown field");
  }
  Scenario s;
  auto require = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw SchemaError(key, "required field is missing");
    return doc.at(key);
  };

  const json& name = require("name");
  if (!name.is_string() || name.get<std::string>().empty()) throw SchemaError("name", "expected a non-empty string");
  s.name = name.get<std::string>();
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw SchemaError("description", "expected a string");
    s.description = doc["description"].get<std::string>();
  }

  s.alpha = expression_array<3>(require("alpha"), "alpha");
  if (doc.contains("metric")) {
    const json& m = doc["metric"];
    if (!(m.is_string() && m.get<std::string>() == "euclidean")) s.metric = metric_entries(m);
  }

  if (doc.contains("omega")) {
    if (!doc["omega"].is_number()) throw SchemaError("omega", "expected a number");
    s.omega = doc["omega"].get<double>();
    if (!std::isfinite(s.omega)) throw SchemaError("omega", "must be finite");
  }

  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    if (!d.is_object() || !d.contains("min") || !d.contains("max") || d.size() != 2) {
      throw SchemaError("domain", "expected an object {\"min\": [3 numbers], \"max\": [3 numbers]}");
    }
    s.domain.min = real_triple(d["min"], "domain.min");
    s.domain.max = real_triple(d["max"], "domain.max");
    for (int i = 0; i < 3; ++i) {
      if (!(s.domain.min[i] < s.domain.max[i])) {
        throw SchemaError("domain.min[" + std::to_string(i) + "]", "box min must be below max");
      }
    }
  }

  const json& checks = require("checks");
  if (!checks.is_array()) throw SchemaError("checks", "expected an array of check names");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string p = "checks[" + std::to_string(i) + "]";
    if (!checks[i].is_string()) throw SchemaError(p, "expected a check name");
    const std::string c = checks[i].get<std::string>();
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
      throw SchemaError(p, "unknown check \"" + c + "\" (expected contact, beltrami, adapted, theorem1 or maxwell)");
    }
    if (std::find(s.checks.begin(), s.checks.end(), c) != s.checks.end()) {
      throw SchemaError(p, "check \"" + c + "\" listed twice");
    }
    s.checks.push_back(c);
  }

  if (doc.contains("beta_override") && !doc["beta_override"].is_null()) {
    s.beta_override = expression_array<3>(doc["beta_override"], "beta_override");
  }

  if (doc.contains("samples")) {
    const json& v = doc["samples"];
    if (!v.is_number_integer() || v.get<long long>() < 1) throw SchemaError("samples", "expected an integer >= 1");
    s.samples = v.get<std::size_t>();
  }
  if (doc.contains("seed")) {
    const json& v = doc["seed"];
    if (!v.is_number_unsigned()) throw SchemaError("seed", "expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("tol")) {
    const json& v = doc["tol"];
    if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>())) {
      throw SchemaError("tol", "expected a positive number");
    }
    s.tol = v.get<double>();
  }
  if (doc.contains("expect")) {
    const json& v = doc["expect"];
    if (!v.is_string() || (v != "pass" && v != "fail")) throw SchemaError("expect", "expected \"pass\" or \"fail\"");
    s.expect_pass = v == "pass";
  }

  const bool needs_omega = std::find(s.checks.begin(), s.checks.end(), "theorem1") != s.checks.end() ||
                           std::find(s.checks.begin(), s.checks.end(), "maxwell") != s.checks.end();
  if (needs_omega && s.omega == 0.0) throw SchemaError("omega", "must be nonzero when theorem1 or maxwell is requested");
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

OrderedJson scenario_to_json(const Scenario& s) {
  OrderedJson j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["alpha"] = s.alpha;
  if (s.metric) {
    j["metric"] = *s.metric;
  } else {
    j["metric"] = "euclidean";
  }
  j["omega"] = s.omega;
  j["domain"] = {{"min", s.domain.min}, {"max", s.domain.max}};
  j["checks"] = s.checks;
  if (s.beta_override) j["beta_override"] = *s.beta_override;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["tol"] = s.tol;
  j["expect"] = s.expect_pass ? "pass" : "fail";
  return j;
}

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> all = [] {
    const std::vector<std::string> all_checks{"contact", "beltrami", "adapted", "theorem1", "maxwell"};
    std::vector<Scenario> v;

    Scenario plane;
    plane.name = "adapted-plane-wave";
    plane.description = "cos(2z)dx - sin(2z)dy, Euclidean metric (adapted, factor 2), omega = 2; all checks";
    plane.alpha = {"cos(2*z)", "-sin(2*z)", "0"};
    plane.omega = 2.0;
    plane.checks = all_checks;
    v.push_back(plane);

    Scenario heis;
    heis.name = "heisenberg-tight";
    heis.description = "dz - y dx with its adapted metric, omega = -2; all checks";
    heis.alpha = {"-y", "0", "1"};
    heis.metric = std::array<std::string, 6>{"1/2 + y^2", "0", "-y", "1/2", "0", "1"};
    heis.omega = -2.0;
    heis.checks = all_checks;
    v.push_back(heis);

    Scenario ot;
    ot.name = "overtwisted-plane-wave";
    ot.description = "cos(z)dx + sin(z)dy, Euclidean metric, Beltrami factor -1; contact and beltrami checks";
    ot.alpha = {"cos(z)", "sin(z)", "0"};
    ot.checks = {"contact", "beltrami"};
    v.push_back(ot);

    Scenario dz;
    dz.name = "non-example-dz";
    dz.description = "dz is not a contact form; negative control, the contact check is expected to fail";
    dz.alpha = {"0", "0", "1"};
    dz.checks = {"contact"};
    dz.expect_pass = false;
    v.push_back(dz);
    return v;
  }();
  return all;
}

const Scenario* find_builtin(const std::string& name) {
  for (const auto& s : builtin_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

RunResult run_scenario(const Scenario& scenario, const RunOverrides& overrides) {
  const std::size_t n = overrides.samples.value_or(scenario.samples);
  const std::uint64_t seed = overrides.seed.value_or(scenario.seed);
  const double tol = overrides.tol.value_or(scenario.tol);
  if (n < 1) throw SchemaError("samples", "expected an integer >= 1");
  if (!(tol > 0.0)) throw SchemaError("tol", "expected a positive number");

  const SampleSet samples = SampleSet::generate(scenario.domain, n, seed);
  const KForm alpha = KForm::parse(1, scenario.alpha);
  const MetricField g = build_metric(scenario);

  OrderedJson report;
  report["scenario"] = scenario.name;
  report["seed"] = seed;
  report["samples"] = n;
  report["sampler"] = std::string(SampleSet::kAlgorithm);
  report["tol"] = tol;
  report["omega"] = scenario.omega;
  report["domain"] = {{"min", scenario.domain.min}, {"max", scenario.domain.max}};

  OrderedJson warnings = OrderedJson::array();
  try {
    for (const auto& w : g.audit(samples).warnings) warnings.push_back(w);
  } catch (const Error& e) {
    warnings.push_back(std::string("metric audit failed: ") + e.what());
  }

  bool all_pass = true;
  OrderedJson checks = OrderedJson::object();
  for (const auto& c : scenario.checks) {
    OrderedJson result;
    try {
      result = run_check(c, scenario, alpha, g, samples, tol);
    } catch (const Error& e) {
      result = OrderedJson{{"pass", false}, {"error", e.what()}};
    }
    all_pass = all_pass && result["pass"].get<bool>();
    checks[c] = std::move(result);
  }
  report["checks"] = std::move(checks);
  report["pass"] = all_pass;
  report["expect"] = scenario.expect_pass ? "pass" : "fail";
  report["warnings"] = std::move(warnings);
  report["timestamp"] = utc_timestamp();
  return RunResult{std::move(report), all_pass};
}

std::string dump_report(const OrderedJson& report) { return report.dump(2) + "\n"; }

}  // namespace contactmax
