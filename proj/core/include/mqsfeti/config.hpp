#pragma once

#include "mqsfeti/geometry.hpp"
#include "mqsfeti/materials.hpp"
#include "mqsfeti/source.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mqsfeti {

/// Parsed and validated run configuration.
///
/// Source kinds:
///   conductor_loop    — azimuthal loop current supported strictly inside the
///                       conductor (center, axis, radius, magnitude);
///   insulator_coil    — the same loop placed in the insulator; requires
///                       project_solenoidal = true;
///   boundary_uniform_B— surface current (B0/mu) x n on the outer boundary;
///   raw               — edge functional read from a JSON array file.
struct RunConfig {
  BoxGeometry geometry;
  Materials materials;

  struct Source {
    std::string kind = "conductor_loop";
    Vec3 center{0.25, 0.5, 0.5};
    Vec3 axis{0.0, 0.0, 1.0};
    double radius = 0.15;
    double magnitude = 1.0;
    Vec3 b0{0.0, 0.0, 1.0};
    std::string coefficients_path;
    bool project_solenoidal = false;
    double interface_split = 1.0;
    int quadrature_order = 4;
  } source;

  std::vector<std::string> formulations{"mono", "feti_direct"};
  double solver_tol = 1e-10;
  int max_iterations = 200;
  std::vector<std::string> checks; // empty or {"all"}: every applicable check
  std::string report_path;
  std::string export_dir;
  int threads = 1;

  bool wants(const std::string& formulation) const;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

/// Instantiates the analytic source described by the config. Raw sources are
/// loaded from the coefficients file here.
SourceSpec make_source_spec(const RunConfig& config);

/// The azimuthal loop current density used by both loop source kinds:
/// magnitude * (1 - (d/r_minor)^2)^2 in the direction axis x radial, where d
/// is the distance to the circle and r_minor = 0.45 * radius. Compactly
/// supported and divergence-free.
Vec3 loop_current(const Vec3& x, const Vec3& center, const Vec3& axis, double radius,
                  double magnitude);

} // namespace mqsfeti
