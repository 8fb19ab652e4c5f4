#include "mqsfeti/config.hpp"

#include "mqsfeti/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace mqsfeti {

namespace {

Vec3 parse_vec3(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
    throw ConfigError("expected a 3-vector at '" + key + "'");
  return Vec3(j[key][0].get<double>(), j[key][1].get<double>(), j[key][2].get<double>());
}

double parse_number(const nlohmann::json& j, const std::string& key, double fallback,
                    bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError("missing required field '" + key + "'");
    return fallback;
  }
  if (!j[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
  return j[key].get<double>();
}

const std::set<std::string> kFormulations{"mono", "feti_direct", "feti_dual"};
const std::set<std::string> kSourceKinds{"conductor_loop", "insulator_coil", "boundary_uniform_B",
                                         "raw"};

} // namespace

bool RunConfig::wants(const std::string& formulation) const {
  return std::find(formulations.begin(), formulations.end(), formulation) != formulations.end();
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (!j.is_object()) throw ConfigError("configuration root must be a JSON object");

  if (!j.contains("geometry")) throw ConfigError("missing 'geometry'");
  const auto& g = j["geometry"];
  c.geometry.domain_min = parse_vec3(g, "domain_min");
  c.geometry.domain_max = parse_vec3(g, "domain_max");
  c.geometry.conductor_min = parse_vec3(g, "conductor_min");
  c.geometry.conductor_max = parse_vec3(g, "conductor_max");
  if (!g.contains("resolution") || !g["resolution"].is_number_integer())
    throw ConfigError("geometry.resolution must be an integer");
  c.geometry.resolution = g["resolution"].get<int>();
  c.geometry.validate();

  if (!j.contains("materials")) throw ConfigError("missing 'materials'");
  const auto& m = j["materials"];
  c.materials.mu_conductor = parse_number(m, "mu_C", 1.0, true);
  c.materials.mu_insulator = parse_number(m, "mu_I", 1.0, true);
  c.materials.sigma_conductor = parse_number(m, "sigma_C", 1.0, true);
  c.materials.omega = parse_number(m, "omega", 0.0, true);
  c.materials.validate();

  if (!j.contains("source")) throw ConfigError("missing 'source'");
  const auto& s = j["source"];
  if (!s.contains("kind") || !s["kind"].is_string()) throw ConfigError("source.kind must be a string");
  c.source.kind = s["kind"].get<std::string>();
  if (!kSourceKinds.count(c.source.kind))
    throw ConfigError("unknown source kind '" + c.source.kind + "'");
  if (c.source.kind == "conductor_loop" || c.source.kind == "insulator_coil") {
    c.source.center = parse_vec3(s, "center");
    c.source.axis = parse_vec3(s, "axis");
    c.source.radius = parse_number(s, "radius", 0.0, true);
    c.source.magnitude = parse_number(s, "magnitude", 1.0);
    if (!(c.source.radius > 0.0)) throw ConfigError("loop radius must be positive");
    if (c.source.axis.norm() == 0.0) throw ConfigError("loop axis must be nonzero");
  } else if (c.source.kind == "boundary_uniform_B") {
    c.source.b0 = parse_vec3(s, "B0");
  } else if (c.source.kind == "raw") {
    if (!s.contains("coefficients_path") || !s["coefficients_path"].is_string())
      throw ConfigError("raw source requires 'coefficients_path'");
    c.source.coefficients_path = s["coefficients_path"].get<std::string>();
  }
  c.source.project_solenoidal = s.value("project_solenoidal", false);
  c.source.interface_split = parse_number(s, "interface_split", 1.0);
  if (c.source.interface_split < 0.0 || c.source.interface_split > 1.0)
    throw ConfigError("interface_split must lie in [0, 1]");
  c.source.quadrature_order = s.value("quadrature_order", 4);
  if (c.source.quadrature_order < 1 || c.source.quadrature_order > 5)
    throw ConfigError("quadrature_order must be between 1 and 5");
  if (c.source.kind == "insulator_coil" && !c.source.project_solenoidal)
    throw ConfigError("insulator_coil requires project_solenoidal = true");

  if (!j.contains("formulations") || !j["formulations"].is_array() || j["formulations"].empty())
    throw ConfigError("formulations must be a nonempty array");
  c.formulations.clear();
  for (const auto& f : j["formulations"]) {
    const auto name = f.get<std::string>();
    if (!kFormulations.count(name)) throw ConfigError("unknown formulation '" + name + "'");
    if (!c.wants(name)) c.formulations.push_back(name);
  }

  if (j.contains("solver")) {
    c.solver_tol = parse_number(j["solver"], "tol", c.solver_tol);
    c.max_iterations = j["solver"].value("max_iterations", c.max_iterations);
  }
  if (!(c.solver_tol > 0.0)) throw ConfigError("solver tol must be positive");
  if (c.max_iterations < 1) throw ConfigError("max_iterations must be at least 1");

  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("checks must be an array of names");
    for (const auto& name : j["checks"]) c.checks.push_back(name.get<std::string>());
  }

  if (j.contains("output")) {
    c.report_path = j["output"].value("report", std::string{});
    c.export_dir = j["output"].value("export_dir", std::string{});
  }
  c.threads = j.value("threads", 1);
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["geometry"] = {{"domain_min", {geometry.domain_min[0], geometry.domain_min[1], geometry.domain_min[2]}},
                   {"domain_max", {geometry.domain_max[0], geometry.domain_max[1], geometry.domain_max[2]}},
                   {"conductor_min",
                    {geometry.conductor_min[0], geometry.conductor_min[1], geometry.conductor_min[2]}},
                   {"conductor_max",
                    {geometry.conductor_max[0], geometry.conductor_max[1], geometry.conductor_max[2]}},
                   {"resolution", geometry.resolution}};
  j["materials"] = {{"mu_C", materials.mu_conductor},
                    {"mu_I", materials.mu_insulator},
                    {"sigma_C", materials.sigma_conductor},
                    {"omega", materials.omega}};
  j["source"] = {{"kind", source.kind},
                 {"project_solenoidal", source.project_solenoidal},
                 {"interface_split", source.interface_split},
                 {"quadrature_order", source.quadrature_order}};
  if (source.kind == "conductor_loop" || source.kind == "insulator_coil") {
    j["source"]["center"] = {source.center[0], source.center[1], source.center[2]};
    j["source"]["axis"] = {source.axis[0], source.axis[1], source.axis[2]};
    j["source"]["radius"] = source.radius;
    j["source"]["magnitude"] = source.magnitude;
  } else if (source.kind == "boundary_uniform_B") {
    j["source"]["B0"] = {source.b0[0], source.b0[1], source.b0[2]};
  } else if (source.kind == "raw") {
    j["source"]["coefficients_path"] = source.coefficients_path;
  }
  j["formulations"] = formulations;
  j["solver"] = {{"tol", solver_tol}, {"max_iterations", max_iterations}};
  j["checks"] = checks;
  j["output"] = {{"report", report_path}, {"export_dir", export_dir}};
  j["threads"] = threads;
  return j;
}

Vec3 loop_current(const Vec3& x, const Vec3& center, const Vec3& axis, double radius,
                  double magnitude) {
  const Vec3 a = axis.normalized();
  const Vec3 u = x - center;
  const Vec3 u_axial = u.dot(a) * a;
  const Vec3 u_radial = u - u_axial;
  const double rho = u_radial.norm();
  if (rho < 1e-14) return Vec3::Zero();
  const double minor = 0.45 * radius;
  const double d2 =
      (rho - radius) * (rho - radius) + u_axial.squaredNorm();
  if (d2 >= minor * minor) return Vec3::Zero();
  const double bump = 1.0 - d2 / (minor * minor);
  return magnitude * bump * bump * a.cross(u_radial / rho);
}

SourceSpec make_source_spec(const RunConfig& config) {
  SourceSpec spec;
  spec.quadrature_order = config.source.quadrature_order;
  spec.project = config.source.project_solenoidal;

  const auto& s = config.source;
  if (s.kind == "conductor_loop" || s.kind == "insulator_coil") {
    spec.kind = SourceSpec::Kind::Volumetric;
    spec.conductor_support_only = s.kind == "conductor_loop";
    const Vec3 center = s.center, axis = s.axis;
    const double radius = s.radius, magnitude = s.magnitude;
    spec.volumetric = [center, axis, radius, magnitude](const Vec3& x) {
      return loop_current(x, center, axis, radius, magnitude);
    };
  } else if (s.kind == "boundary_uniform_B") {
    spec.kind = SourceSpec::Kind::Boundary;
    const Vec3 b0 = s.b0;
    spec.boundary = [b0](const Vec3&, const Vec3& n, double mu) -> Vec3 {
      return (b0 / mu).cross(n);
    };
  } else if (s.kind == "raw") {
    spec.kind = SourceSpec::Kind::Raw;
    std::ifstream in(s.coefficients_path);
    if (!in) throw ConfigError("cannot open raw coefficients file " + s.coefficients_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("raw coefficients file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_array()) throw ConfigError("raw coefficients file must hold a JSON array");
    spec.raw = VecR(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) spec.raw[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  } else {
    throw ConfigError("unknown source kind '" + s.kind + "'");
  }
  return spec;
}

} // namespace mqsfeti
