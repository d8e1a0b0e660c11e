#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "contactmax/error.hpp"
#include "contactmax/sampling.hpp"

namespace contactmax {

using OrderedJson = nlohmann::ordered_json;

/// Scenario file violates the schema. `path` names the offending field,
/// e.g. "metric[3]" or "domain.min".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline constexpr std::size_t kDefaultSamples = 2000;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// One verification job. Expression fields hold the text as written.
struct Scenario {
  std::string name;
  std::string description;
  std::array<std::string, 3> alpha;
  /// Upper triangle g11 g12 g13 g22 g23 g33; empty means Euclidean.
  std::optional<std::array<std::string, 6>> metric;
  double omega = 1.0;
  Box domain;
  /// Subset of contact, beltrami, adapted, theorem1, maxwell, run in order.
  std::vector<std::string> checks;
  std::optional<std::array<std::string, 3>> beta_override;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-9;
  /// Declared outcome; negative controls set this to false.
  bool expect_pass = true;
};

const std::vector<std::string>& known_checks();

/// Validate and convert a scenario document; every expression is parsed
/// here so that syntax errors surface as SchemaError with a field path.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);
OrderedJson scenario_to_json(const Scenario& s);

/// The shipped scenarios, in listing order.
const std::vector<Scenario>& builtin_scenarios();
const Scenario* find_builtin(const std::string& name);

struct RunOverrides {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

struct RunResult {
  OrderedJson report;
  bool passed = false;
};

/// Run every requested check. The report carries a "timestamp" field; all
/// other content is a deterministic function of the scenario and overrides.
RunResult run_scenario(const Scenario& scenario, const RunOverrides& overrides = {});

/// Report text as written to disk.
std::string dump_report(const OrderedJson& report);

}  // namespace contactmax
