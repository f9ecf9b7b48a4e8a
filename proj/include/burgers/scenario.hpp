#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "burgers/estimates.hpp"
#include "burgers/weak.hpp"

namespace burgers {

// Flat key = list-of-reals parameters for one verifier.
struct VerifierSpec {
  std::string name;
  std::vector<std::pair<std::string, std::vector<double>>> params;

  bool has(const std::string& key) const;
  double get(const std::string& key, double fallback) const;
  std::vector<double> get_list(const std::string& key) const;
};

struct ScenarioConfig {
  std::string id;
  std::string description;
  std::vector<double> states{0.0};
  std::vector<double> breaks;
  AdmissibilityPolicy policy = AdmissibilityPolicy::entropic;
  double horizon = 1.0;
  double fan_step = 0.05;
  std::size_t nt = 256, nx = 256;
  std::vector<VerifierSpec> verifiers;
};

struct ScenarioResult {
  std::string id;
  std::vector<EstimateReport> estimates;
  std::vector<DecayReport> decays;
  bool all_pass = true;
};

// Built-in scenario catalog (sorted by id).
std::vector<ScenarioConfig> builtin_catalog();
std::string catalog_listing();
const ScenarioConfig* find_builtin(const std::string& id);

// Structured-text config: [section] headers and flat key = value lines,
// lists as comma-separated values with optional brackets. Unknown keys and
// sections are reported with their line number.
ScenarioConfig parse_config(std::istream& is, const std::string& source_name);

// Unit-frame solution on (0,1)^2 described by the config (single break ->
// exact Riemann solution, otherwise front tracking).
PiecewiseSolution build_solution(const ScenarioConfig& cfg);

// Runs every verifier of the scenario. Throws on config/precondition errors.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Runs and writes reports.jsonl, decay CSVs and field dumps under
// out_root/<id>/.
ScenarioResult run_and_write(const ScenarioConfig& cfg, const std::string& out_root);

// Human-readable summary table.
std::string render_summary(const std::vector<ScenarioResult>& results);

// Re-render the summary from reports.jsonl files under dir (one per scenario).
std::string summarize_directory(const std::string& dir);

}  // namespace burgers
