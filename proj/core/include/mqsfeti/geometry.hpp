#pragma once

#include "mqsfeti/types.hpp"

#include <array>

namespace mqsfeti {

/// Axis-aligned box domain with an axis-aligned conductor sub-box. The
/// conductor box must lie on grid planes of the uniform grid with spacing
/// 1/resolution, so the conductor/insulator interface is resolved exactly by
/// mesh faces. Both subdomains are boxes and therefore simply connected with
/// simply connected boundary.
struct BoxGeometry {
  Vec3 domain_min{0.0, 0.0, 0.0};
  Vec3 domain_max{1.0, 1.0, 1.0};
  Vec3 conductor_min{0.0, 0.0, 0.0};
  Vec3 conductor_max{0.5, 1.0, 1.0};
  int resolution = 1; // grid cells per unit length, uniform in all axes

  double spacing() const { return 1.0 / static_cast<double>(resolution); }

  /// Number of grid cells per axis.
  std::array<Index, 3> domain_cells() const;

  /// Conductor box in cell-index coordinates: [lo, hi) per axis.
  std::array<Index, 3> conductor_cell_lo() const;
  std::array<Index, 3> conductor_cell_hi() const;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

} // namespace mqsfeti
