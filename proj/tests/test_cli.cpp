#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsfeti/errors.hpp"
#include "mqsfeti/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mqsfeti;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_json(int n, double omega, const std::string& kind) {
  nlohmann::json j;
  j["geometry"] = {{"domain_min", {0, 0, 0}},     {"domain_max", {1, 1, 1}},
                   {"conductor_min", {0, 0, 0}},  {"conductor_max", {0.5, 1, 1}},
                   {"resolution", n}};
  j["materials"] = {{"mu_C", 1.0}, {"mu_I", 1.0}, {"sigma_C", 1.0}, {"omega", omega}};
  if (kind == "conductor_loop")
    j["source"] = {{"kind", kind}, {"center", {0.25, 0.5, 0.5}}, {"axis", {0, 0, 1}},
                   {"radius", 0.15}, {"magnitude", 1.0}};
  else if (kind == "insulator_coil")
    j["source"] = {{"kind", kind}, {"center", {0.75, 0.5, 0.5}}, {"axis", {0, 0, 1}},
                   {"radius", 0.15}, {"magnitude", 1.0}, {"project_solenoidal", true}};
  else if (kind == "boundary_uniform_B")
    j["source"] = {{"kind", kind}, {"B0", {0, 0, 1}}};
  j["formulations"] = {"mono", "feti_direct"};
  j["solver"] = {{"tol", 1e-10}, {"max_iterations", 200}};
  return j;
}

fs::path temp_dir() {
  const auto dir = fs::temp_directory_path() / "mqsfeti_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const nlohmann::json& j, const std::string& name) {
  const auto path = temp_dir() / name;
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(SOLVE_BIN_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::array()), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::object()), ConfigError);

  auto j = base_json(2, 0.0, "conductor_loop");
  j["source"]["kind"] = "bogus";
  CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);

  j = base_json(2, 0.0, "insulator_coil");
  j["source"]["project_solenoidal"] = false;
  CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);

  j = base_json(2, 0.0, "conductor_loop");
  j["solver"]["tol"] = -1.0;
  CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);

  j = base_json(2, 0.0, "conductor_loop");
  j["formulations"] = nlohmann::json::array();
  CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);

  j = base_json(2, 0.0, "conductor_loop");
  j["source"]["interface_split"] = 1.5;
  CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);

  // Round trip: parse(to_json(parse(j))) is stable.
  const auto c = RunConfig::from_json(base_json(2, 314.0, "insulator_coil"));
  const auto c2 = RunConfig::from_json(c.to_json());
  CHECK(c2.source.kind == "insulator_coil");
  CHECK(c2.materials.omega == 314.0);
}

TEST_CASE("zero source: exit 0, all checks pass, zero report values") {
  auto j = base_json(2, 314.0, "conductor_loop");
  j["source"]["magnitude"] = 0.0;
  j["formulations"] = {"mono", "feti_direct", "feti_dual"};
  const auto result = run(RunConfig::from_json(j));
  CHECK(result.exit_code == 0);
  CHECK(result.report.all_pass());
  CHECK(result.report.has_check("equivalence_A"));
  CHECK(result.report.has_check("dual_iterations"));
  for (const auto& check : result.report.checks)
    if (check.name == "residual_mono") CHECK(check.value == 0.0);
}

TEST_CASE("patch run: exit 0 and patch_test in the report") {
  auto j = base_json(2, 0.0, "boundary_uniform_B");
  const auto report_path = temp_dir() / "patch_report.json";
  j["output"] = {{"report", report_path.string()}};
  const auto result = run(RunConfig::from_json(j));
  REQUIRE(result.error == "");
  CHECK(result.exit_code == 0);

  const auto parsed = nlohmann::json::parse(slurp(report_path));
  REQUIRE(parsed.contains("checks"));
  REQUIRE(parsed.contains("config_echo"));
  REQUIRE(parsed.contains("timings"));
  bool found = false;
  for (const auto& check : parsed["checks"]) {
    REQUIRE(check.contains("name"));
    REQUIRE(check.contains("value"));
    REQUIRE(check.contains("tol"));
    REQUIRE(check.contains("pass"));
    REQUIRE(check.contains("paper_ref"));
    if (check["name"] == "patch_test") {
      found = true;
      CHECK(check["value"].get<double>() <= 1e-10);
      CHECK(check["pass"].get<bool>());
    }
  }
  CHECK(found);
}

TEST_CASE("patch check fails honestly at omega > 0: exit 1, report written") {
  auto j = base_json(2, 2.0 * M_PI * 50.0, "boundary_uniform_B");
  j["checks"] = {"patch_test", "residual_mono"};
  const auto report_path = temp_dir() / "fail_report.json";
  j["output"] = {{"report", report_path.string()}};
  const auto result = run(RunConfig::from_json(j));
  CHECK(result.exit_code == 1);
  CHECK_FALSE(result.report.all_pass());
  const auto parsed = nlohmann::json::parse(slurp(report_path));
  CHECK(parsed["checks"].size() == 2);
}

TEST_CASE("forced dual non-convergence: exit 3") {
  auto j = base_json(2, 314.0, "conductor_loop");
  j["formulations"] = {"feti_dual"};
  j["solver"]["max_iterations"] = 1;
  const auto result = run(RunConfig::from_json(j));
  CHECK(result.exit_code == 3);
  CHECK(!result.error.empty());
}

TEST_CASE("unknown or inapplicable checks: exit 2") {
  auto j = base_json(2, 0.0, "conductor_loop");
  j["checks"] = {"no_such_check"};
  CHECK(run(RunConfig::from_json(j)).exit_code == 2);

  j = base_json(2, 0.0, "conductor_loop");
  j["formulations"] = {"mono"};
  j["checks"] = {"equivalence_A"}; // needs feti_direct as well
  CHECK(run(RunConfig::from_json(j)).exit_code == 2);
}

TEST_CASE("unwritable report path: exit 2") {
  auto j = base_json(2, 0.0, "conductor_loop");
  j["output"] = {{"report", "/nonexistent_dir_zzz/report.json"}};
  CHECK(run(RunConfig::from_json(j)).exit_code == 2);
}

TEST_CASE("vtk export: patch values, zero case, determinism") {
  auto j = base_json(2, 0.0, "boundary_uniform_B");
  const auto dir_a = temp_dir() / "export_a";
  const auto dir_b = temp_dir() / "export_b";
  j["output"] = {{"export_dir", dir_a.string()}};
  REQUIRE(run(RunConfig::from_json(j)).exit_code == 0);
  j["output"] = {{"export_dir", dir_b.string()}};
  REQUIRE(run(RunConfig::from_json(j)).exit_code == 0);

  const std::string mono_a = slurp(dir_a / "fields_mono.vtk");
  CHECK(mono_a == slurp(dir_b / "fields_mono.vtk"));
  CHECK(mono_a.find("# vtk DataFile Version 3.0") == 0);
  CHECK(mono_a.find("VECTORS B_re double") != std::string::npos);
  CHECK(mono_a.find("VECTORS B_im double") != std::string::npos);
  CHECK(mono_a.find("VECTORS E_re double") != std::string::npos);
  CHECK(mono_a.find("SCALARS subdomain int 1") != std::string::npos);

  // Every cell's Re(B) is (0,0,1) in the patch export.
  std::istringstream in(mono_a.substr(mono_a.find("VECTORS B_re double")));
  std::string line;
  std::getline(in, line);
  int cells = 0;
  while (std::getline(in, line) && line.find("VECTORS") == std::string::npos && !line.empty()) {
    std::istringstream ls(line);
    double x, y, z;
    ls >> x >> y >> z;
    CHECK(std::abs(x) < 1e-10);
    CHECK(std::abs(y) < 1e-10);
    CHECK(std::abs(z - 1.0) < 1e-10);
    ++cells;
  }
  CHECK(cells == 48);

  // Zero source: all-zero B vectors.
  auto jz = base_json(2, 0.0, "conductor_loop");
  jz["source"]["magnitude"] = 0.0;
  const auto dir_z = temp_dir() / "export_zero";
  jz["output"] = {{"export_dir", dir_z.string()}};
  REQUIRE(run(RunConfig::from_json(jz)).exit_code == 0);
  const std::string zero = slurp(dir_z / "fields_mono.vtk");
  std::istringstream zin(zero.substr(zero.find("VECTORS B_re double")));
  std::getline(zin, line);
  while (std::getline(zin, line) && line.find("VECTORS") == std::string::npos && !line.empty())
    CHECK(line == "0 0 0");
}

TEST_CASE("solve binary: exit codes through the CLI") {
  const auto ok = write_config(base_json(2, 0.0, "boundary_uniform_B"), "cli_ok.json");
  CHECK(run_binary("--config " + ok.string()) == 0);

  const auto bad = temp_dir() / "cli_bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run_binary("--config " + bad.string()) == 2);

  auto jd = base_json(2, 314.0, "conductor_loop");
  jd["formulations"] = {"feti_dual"};
  jd["solver"]["max_iterations"] = 1;
  const auto diverge = write_config(jd, "cli_diverge.json");
  CHECK(run_binary("--config " + diverge.string()) == 3);

  // Report flag overrides the config path.
  const auto report_path = temp_dir() / "cli_report.json";
  CHECK(run_binary("--config " + ok.string() + " --report " + report_path.string()) == 0);
  CHECK(fs::exists(report_path));
}
