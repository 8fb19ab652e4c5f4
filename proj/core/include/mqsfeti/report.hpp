#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace mqsfeti {

/// One named verification outcome. `provenance` states, in words, which
/// structural claim the number tests; it is serialized under the report key
/// "paper_ref".
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string provenance;
};

struct Report {
  nlohmann::json config_echo;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> timings; // seconds per stage

  bool all_pass() const;
  bool has_check(const std::string& name) const;

  /// Schema: {config_echo, checks: [{name, value, tol, pass, paper_ref}],
  /// timings: {stage: seconds}}.
  nlohmann::json to_json() const;

  /// Writes the JSON report; throws IoError when the path is unwritable.
  void write(const std::string& path) const;
};

} // namespace mqsfeti
