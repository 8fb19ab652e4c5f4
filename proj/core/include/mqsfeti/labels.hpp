#pragma once

#include "mqsfeti/mesh.hpp"

#include <vector>

namespace mqsfeti {

enum class Region : std::uint8_t { Conductor, Insulator };

enum class EntityClass : std::uint8_t {
  ConductorInterior,
  InsulatorInterior,
  Interface,     // on the conductor/insulator interface
  OuterBoundary, // on the domain boundary but not on the interface
};

/// Per-entity subdomain classification plus the index sets used by the
/// tree-cotree construction and the torn-operator assembly. An entity is on
/// the interface iff it lies in a face whose two tets carry different region
/// labels. Closure sets (conductor_*/insulator_*) collect every entity
/// incident to a tet of that region; interface entities belong to both.
struct EntityLabels {
  std::vector<Region> tet_region;
  std::vector<EntityClass> vertex_class, edge_class, face_class;

  std::vector<Index> conductor_vertices, insulator_vertices;
  std::vector<Index> conductor_edges, insulator_edges;
  std::vector<Index> interface_vertices, interface_edges, interface_faces;

  std::vector<std::uint8_t> vertex_in_conductor, vertex_in_insulator;
  std::vector<std::uint8_t> edge_in_conductor, edge_in_insulator;
  std::vector<std::uint8_t> vertex_on_interface, edge_on_interface;

  Region region(Index tet) const { return tet_region[static_cast<std::size_t>(tet)]; }
};

/// Classifies all entities. Also validates that the interface triangulation
/// is nonempty, connected, and simply connected (Euler characteristic 1 for
/// an interface with boundary, 2 for a closed one); throws ConfigError
/// otherwise since that indicates an unsupported conductor placement.
EntityLabels classify_entities(const Mesh& mesh, const BoxGeometry& geometry);

} // namespace mqsfeti
