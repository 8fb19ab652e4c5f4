#include "mqsfeti/report.hpp"

#include "mqsfeti/errors.hpp"

#include <algorithm>
#include <fstream>

namespace mqsfeti {

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool Report::has_check(const std::string& name) const {
  return std::any_of(checks.begin(), checks.end(),
                     [&](const CheckResult& c) { return c.name == name; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json out;
  out["config_echo"] = config_echo;
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    out["checks"].push_back({{"name", c.name},
                             {"value", c.value},
                             {"tol", c.tol},
                             {"pass", c.pass},
                             {"paper_ref", c.provenance}});
  out["timings"] = nlohmann::json::object();
  for (const auto& [stage, seconds] : timings) out["timings"][stage] = seconds;
  return out;
}

void Report::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open report path " + path);
  out << to_json().dump(2) << '\n';
  if (!out) throw IoError("failed writing report to " + path);
}

} // namespace mqsfeti
