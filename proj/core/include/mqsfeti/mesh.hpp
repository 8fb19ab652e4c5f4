#pragma once

#include "mqsfeti/geometry.hpp"
#include "mqsfeti/types.hpp"

#include <array>
#include <vector>

namespace mqsfeti {

/// Structured tetrahedral mesh of a box with globally oriented entities.
///
/// Conventions:
///  - every edge is stored as (lo, hi) with lo < hi and oriented lo -> hi;
///  - faces are stored as sorted vertex triples;
///  - local edges of a tet (v0,v1,v2,v3) follow kLocalEdges; the sign in
///    tet_edge_signs is +1 when the local direction agrees with the global
///    lo -> hi orientation;
///  - local face i is opposite local vertex i.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<Index, 4>> tets;
  std::vector<std::array<Index, 2>> edges;
  std::vector<std::array<Index, 3>> faces;

  std::vector<std::array<Index, 6>> tet_edges;
  std::vector<std::array<std::int8_t, 6>> tet_edge_signs;
  std::vector<std::array<Index, 4>> tet_faces;
  std::vector<std::array<Index, 2>> face_tets; // second entry kInvalidIndex on the boundary

  static constexpr std::array<std::array<int, 2>, 6> kLocalEdges{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  static constexpr std::array<std::array<int, 3>, 4> kLocalFaces{
      {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

  Index n_vertices() const { return static_cast<Index>(vertices.size()); }
  Index n_edges() const { return static_cast<Index>(edges.size()); }
  Index n_faces() const { return static_cast<Index>(faces.size()); }
  Index n_tets() const { return static_cast<Index>(tets.size()); }

  /// Signed volume; positive for every tet by construction.
  double tet_volume(Index t) const;

  /// V - E + F - T; equals 1 for a mesh of a ball.
  long long euler_characteristic() const;
};

/// Kuhn (body-diagonal) subdivision of each grid cube into 6 tets, with the
/// diagonal running from the cube's min corner to its max corner. Adjacent
/// cubes split shared faces identically, so the mesh is conforming.
Mesh build_box_mesh(const BoxGeometry& geometry);

} // namespace mqsfeti
