#include "mqsfeti/geometry.hpp"

#include "mqsfeti/errors.hpp"

#include <cmath>
#include <string>

namespace mqsfeti {

namespace {

// Snap a coordinate to the grid; throws if it does not lie on a grid plane.
Index grid_index(double coord, double origin, double h, const char* what) {
  const double t = (coord - origin) / h;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t)))
    throw ConfigError(std::string(what) + " is not aligned to the mesh grid (offset " +
                      std::to_string(coord - origin) + ", spacing " + std::to_string(h) + ")");
  return static_cast<Index>(r);
}

} // namespace

std::array<Index, 3> BoxGeometry::domain_cells() const {
  const double h = spacing();
  std::array<Index, 3> n{};
  for (int d = 0; d < 3; ++d)
    n[d] = grid_index(domain_max[d], domain_min[d], h, "domain extent");
  return n;
}

std::array<Index, 3> BoxGeometry::conductor_cell_lo() const {
  const double h = spacing();
  std::array<Index, 3> n{};
  for (int d = 0; d < 3; ++d)
    n[d] = grid_index(conductor_min[d], domain_min[d], h, "conductor_min");
  return n;
}

std::array<Index, 3> BoxGeometry::conductor_cell_hi() const {
  const double h = spacing();
  std::array<Index, 3> n{};
  for (int d = 0; d < 3; ++d)
    n[d] = grid_index(conductor_max[d], domain_min[d], h, "conductor_max");
  return n;
}

void BoxGeometry::validate() const {
  if (resolution < 1) throw ConfigError("resolution must be a positive integer");
  for (int d = 0; d < 3; ++d) {
    if (!(domain_max[d] > domain_min[d]))
      throw ConfigError("domain box is empty along axis " + std::to_string(d));
    if (!(conductor_max[d] > conductor_min[d]))
      throw ConfigError("conductor box is empty along axis " + std::to_string(d));
    if (conductor_min[d] < domain_min[d] - 1e-12 || conductor_max[d] > domain_max[d] + 1e-12)
      throw ConfigError("conductor box is not contained in the domain box");
  }

  const auto cells = domain_cells();
  const auto lo = conductor_cell_lo();
  const auto hi = conductor_cell_hi();
  for (int d = 0; d < 3; ++d) {
    if (cells[d] < 1) throw ConfigError("domain must contain at least one cell per axis");
    if (hi[d] <= lo[d]) throw ConfigError("conductor box contains no cells along axis " + std::to_string(d));
    if (lo[d] < 0 || hi[d] > cells[d])
      throw ConfigError("conductor box extends outside the domain grid");
  }

  bool conductor_is_domain = true;
  for (int d = 0; d < 3; ++d)
    conductor_is_domain = conductor_is_domain && lo[d] == 0 && hi[d] == cells[d];
  if (conductor_is_domain)
    throw ConfigError("insulator subdomain is empty (conductor box fills the whole domain)");
}

} // namespace mqsfeti
