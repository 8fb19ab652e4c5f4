#include "mqsfeti/mesh.hpp"

#include "mqsfeti/errors.hpp"

#include <algorithm>
#include <string>

namespace mqsfeti {

namespace {

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

// The six axis permutations, in lexicographic order. Tet k of a cube visits
// the min corner, then steps along axes perm[k][0..2] to the max corner.
constexpr std::array<std::array<int, 3>, 6> kKuhnPerms{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

} // namespace

double Mesh::tet_volume(Index t) const {
  const auto& v = tets[static_cast<std::size_t>(t)];
  return signed_volume(vertices[v[0]], vertices[v[1]], vertices[v[2]], vertices[v[3]]);
}

long long Mesh::euler_characteristic() const {
  return static_cast<long long>(n_vertices()) - n_edges() + n_faces() - n_tets();
}

Mesh build_box_mesh(const BoxGeometry& geometry) {
  geometry.validate();

  const auto cells = geometry.domain_cells();
  const Index nx = cells[0], ny = cells[1], nz = cells[2];
  const double h = geometry.spacing();

  Mesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
  for (Index k = 0; k <= nz; ++k)
    for (Index j = 0; j <= ny; ++j)
      for (Index i = 0; i <= nx; ++i)
        mesh.vertices.push_back(geometry.domain_min + h * Vec3(i, j, k));

  const auto vid = [&](Index i, Index j, Index k) {
    return i + (nx + 1) * (j + (ny + 1) * k);
  };

  mesh.tets.reserve(static_cast<std::size_t>(nx) * ny * nz * 6);
  for (Index k = 0; k < nz; ++k)
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i)
        for (const auto& perm : kKuhnPerms) {
          std::array<Index, 3> c{i, j, k};
          std::array<Index, 4> tet{};
          tet[0] = vid(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[perm[s]];
            tet[s + 1] = vid(c[0], c[1], c[2]);
          }
          if (signed_volume(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                            mesh.vertices[tet[2]], mesh.vertices[tet[3]]) < 0.0)
            std::swap(tet[2], tet[3]);
          mesh.tets.push_back(tet);
        }

  // Global edge and face enumeration: collect, sort, dedupe. Sorting makes
  // the enumeration a pure function of the vertex numbering.
  std::vector<std::array<Index, 2>> edge_bag;
  edge_bag.reserve(mesh.tets.size() * 6);
  std::vector<std::array<Index, 3>> face_bag;
  face_bag.reserve(mesh.tets.size() * 4);
  for (const auto& tet : mesh.tets) {
    for (const auto& le : Mesh::kLocalEdges) {
      Index a = tet[le[0]], b = tet[le[1]];
      if (a > b) std::swap(a, b);
      edge_bag.push_back({a, b});
    }
    for (const auto& lf : Mesh::kLocalFaces) {
      std::array<Index, 3> f{tet[lf[0]], tet[lf[1]], tet[lf[2]]};
      std::sort(f.begin(), f.end());
      face_bag.push_back(f);
    }
  }
  std::sort(edge_bag.begin(), edge_bag.end());
  edge_bag.erase(std::unique(edge_bag.begin(), edge_bag.end()), edge_bag.end());
  mesh.edges = std::move(edge_bag);
  std::sort(face_bag.begin(), face_bag.end());
  face_bag.erase(std::unique(face_bag.begin(), face_bag.end()), face_bag.end());
  mesh.faces = std::move(face_bag);

  const auto edge_id = [&](Index a, Index b) {
    std::array<Index, 2> key{std::min(a, b), std::max(a, b)};
    const auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
    return static_cast<Index>(it - mesh.edges.begin());
  };
  const auto face_id = [&](std::array<Index, 3> f) {
    std::sort(f.begin(), f.end());
    const auto it = std::lower_bound(mesh.faces.begin(), mesh.faces.end(), f);
    return static_cast<Index>(it - mesh.faces.begin());
  };

  mesh.tet_edges.resize(mesh.tets.size());
  mesh.tet_edge_signs.resize(mesh.tets.size());
  mesh.tet_faces.resize(mesh.tets.size());
  mesh.face_tets.assign(mesh.faces.size(), {kInvalidIndex, kInvalidIndex});
  for (Index t = 0; t < mesh.n_tets(); ++t) {
    const auto& tet = mesh.tets[static_cast<std::size_t>(t)];
    for (int e = 0; e < 6; ++e) {
      const Index a = tet[Mesh::kLocalEdges[e][0]];
      const Index b = tet[Mesh::kLocalEdges[e][1]];
      mesh.tet_edges[t][e] = edge_id(a, b);
      mesh.tet_edge_signs[t][e] = static_cast<std::int8_t>(a < b ? 1 : -1);
    }
    for (int f = 0; f < 4; ++f) {
      const Index fi = face_id({tet[Mesh::kLocalFaces[f][0]], tet[Mesh::kLocalFaces[f][1]],
                                tet[Mesh::kLocalFaces[f][2]]});
      mesh.tet_faces[t][f] = fi;
      auto& owners = mesh.face_tets[static_cast<std::size_t>(fi)];
      if (owners[0] == kInvalidIndex)
        owners[0] = t;
      else if (owners[1] == kInvalidIndex)
        owners[1] = t;
      else
        throw TopologyError("face shared by more than two tets");
    }
  }

  for (Index t = 0; t < mesh.n_tets(); ++t)
    if (mesh.tet_volume(t) <= 0.0)
      throw AssemblyError("non-positive tet volume at tet " + std::to_string(t));
  if (mesh.euler_characteristic() != 1)
    throw TopologyError("mesh of a box must have Euler characteristic 1");

  return mesh;
}

} // namespace mqsfeti
