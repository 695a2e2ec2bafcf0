/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_REPORT_HPP
#define GSTEER_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace gsteer::io {

inline constexpr const char* kToolName = "gsteer";
inline constexpr const char* kToolVersion = "0.1.0";
/// Relative output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "GSTEER_OUT_DIR";

/// One invocation: a scenario name, a flat key-value parameter map, and the
/// output sink. Unknown keys are rejected with the list of valid ones.
struct RunConfig {
  std::string scenario;
  std::map<std::string, std::string> params;
  std::string output_path;        // empty = stdout
  std::string format = "json";    // json | csv | svg
};

struct KeySpec {
  std::string key;
  std::string doc;
  std::string fallback;  // empty string means "no default"
  bool required = false;
};

const std::vector<std::string>& scenario_names();
const std::vector<KeySpec>& scenario_schema(const std::string& scenario);

/// Applies defaults and rejects unknown or missing keys. Throws
/// std::invalid_argument with a listing of the valid keys on failure.
void validate_config(RunConfig& config);

/// Evaluate a scenario. The returned report carries the fully resolved
/// configuration (defaults and seed included) next to the results, so every
/// output file is self-describing and reproducible.
nlohmann::json run_scenario(const RunConfig& config);

std::string emit_json(const nlohmann::json& report);
std::string emit_csv(const nlohmann::json& report);
std::string emit_svg(const nlohmann::json& report);

/// Render and write the report per config; resolves the output directory
/// environment variable. Returns the path written, or empty for stdout.
std::string write_report(const nlohmann::json& report, const RunConfig& config);

/// Re-run the scenario recorded in a JSON report and require the recomputed
/// results to match the stored ones bit for bit. Returns true on match.
bool check_report(const std::string& json_text, std::string* diagnostic = nullptr);

/// Grid syntax: a comma list of values, or "min:max:logN" / "min:max:linN"
/// for N log- or linearly spaced points (inclusive).
std::vector<double> parse_grid(const std::string& spec);

/// Flat "key = value" file with '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace gsteer::io

#endif
