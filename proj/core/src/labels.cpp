#include "mqsfeti/labels.hpp"

#include "mqsfeti/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mqsfeti {

namespace {

Index find_edge(const Mesh& mesh, Index a, Index b) {
  std::array<Index, 2> key{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
  if (it == mesh.edges.end() || *it != key) throw TopologyError("edge lookup failed");
  return static_cast<Index>(it - mesh.edges.begin());
}

std::vector<Index> collect(const std::vector<std::uint8_t>& mask) {
  std::vector<Index> out;
  for (Index i = 0; i < static_cast<Index>(mask.size()); ++i)
    if (mask[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[parent[static_cast<std::size_t>(a)]];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(Index a, Index b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

EntityLabels classify_entities(const Mesh& mesh, const BoxGeometry& geometry) {
  EntityLabels labels;
  const std::size_t nv = static_cast<std::size_t>(mesh.n_vertices());
  const std::size_t ne = static_cast<std::size_t>(mesh.n_edges());
  const std::size_t nf = static_cast<std::size_t>(mesh.n_faces());
  const std::size_t nt = static_cast<std::size_t>(mesh.n_tets());

  labels.tet_region.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tet = mesh.tets[t];
    const Vec3 c = 0.25 * (mesh.vertices[tet[0]] + mesh.vertices[tet[1]] +
                           mesh.vertices[tet[2]] + mesh.vertices[tet[3]]);
    const bool conductor = (c.array() > geometry.conductor_min.array()).all() &&
                           (c.array() < geometry.conductor_max.array()).all();
    labels.tet_region[t] = conductor ? Region::Conductor : Region::Insulator;
  }

  labels.vertex_in_conductor.assign(nv, 0);
  labels.vertex_in_insulator.assign(nv, 0);
  labels.edge_in_conductor.assign(ne, 0);
  labels.edge_in_insulator.assign(ne, 0);
  for (std::size_t t = 0; t < nt; ++t) {
    auto& vmask = labels.tet_region[t] == Region::Conductor ? labels.vertex_in_conductor
                                                            : labels.vertex_in_insulator;
    auto& emask = labels.tet_region[t] == Region::Conductor ? labels.edge_in_conductor
                                                            : labels.edge_in_insulator;
    for (Index v : mesh.tets[t]) vmask[static_cast<std::size_t>(v)] = 1;
    for (Index e : mesh.tet_edges[t]) emask[static_cast<std::size_t>(e)] = 1;
  }

  labels.face_class.resize(nf);
  std::vector<std::uint8_t> face_on_interface(nf, 0), face_on_boundary(nf, 0);
  for (std::size_t f = 0; f < nf; ++f) {
    const auto owners = mesh.face_tets[f];
    if (owners[1] == kInvalidIndex) {
      labels.face_class[f] = EntityClass::OuterBoundary;
      face_on_boundary[f] = 1;
    } else if (labels.tet_region[static_cast<std::size_t>(owners[0])] !=
               labels.tet_region[static_cast<std::size_t>(owners[1])]) {
      labels.face_class[f] = EntityClass::Interface;
      face_on_interface[f] = 1;
    } else {
      labels.face_class[f] = labels.tet_region[static_cast<std::size_t>(owners[0])] == Region::Conductor
                                 ? EntityClass::ConductorInterior
                                 : EntityClass::InsulatorInterior;
    }
  }

  labels.vertex_on_interface.assign(nv, 0);
  labels.edge_on_interface.assign(ne, 0);
  std::vector<std::uint8_t> vertex_on_boundary(nv, 0), edge_on_boundary(ne, 0);
  for (std::size_t f = 0; f < nf; ++f) {
    if (!face_on_interface[f] && !face_on_boundary[f]) continue;
    const auto& fv = mesh.faces[f];
    const std::array<Index, 3> fe{find_edge(mesh, fv[0], fv[1]), find_edge(mesh, fv[0], fv[2]),
                                  find_edge(mesh, fv[1], fv[2])};
    if (face_on_interface[f]) {
      for (Index v : fv) labels.vertex_on_interface[static_cast<std::size_t>(v)] = 1;
      for (Index e : fe) labels.edge_on_interface[static_cast<std::size_t>(e)] = 1;
    } else {
      for (Index v : fv) vertex_on_boundary[static_cast<std::size_t>(v)] = 1;
      for (Index e : fe) edge_on_boundary[static_cast<std::size_t>(e)] = 1;
    }
  }

  labels.vertex_class.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (labels.vertex_on_interface[v])
      labels.vertex_class[v] = EntityClass::Interface;
    else if (vertex_on_boundary[v])
      labels.vertex_class[v] = EntityClass::OuterBoundary;
    else
      labels.vertex_class[v] = labels.vertex_in_conductor[v] ? EntityClass::ConductorInterior
                                                             : EntityClass::InsulatorInterior;
  }
  labels.edge_class.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    if (labels.edge_on_interface[e])
      labels.edge_class[e] = EntityClass::Interface;
    else if (edge_on_boundary[e])
      labels.edge_class[e] = EntityClass::OuterBoundary;
    else
      labels.edge_class[e] = labels.edge_in_conductor[e] ? EntityClass::ConductorInterior
                                                         : EntityClass::InsulatorInterior;
  }

  labels.conductor_vertices = collect(labels.vertex_in_conductor);
  labels.insulator_vertices = collect(labels.vertex_in_insulator);
  labels.conductor_edges = collect(labels.edge_in_conductor);
  labels.insulator_edges = collect(labels.edge_in_insulator);
  labels.interface_vertices = collect(labels.vertex_on_interface);
  labels.interface_edges = collect(labels.edge_on_interface);
  labels.interface_faces = collect(face_on_interface);

  if (labels.interface_faces.empty())
    throw ConfigError("conductor/insulator interface is empty");

  // edges(closure C) ∩ edges(closure I) must equal edges(interface).
  for (std::size_t e = 0; e < ne; ++e) {
    const bool shared = labels.edge_in_conductor[e] && labels.edge_in_insulator[e];
    if (shared != static_cast<bool>(labels.edge_on_interface[e]))
      throw TopologyError("subdomain closures meet away from the interface triangulation");
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const bool shared = labels.vertex_in_conductor[v] && labels.vertex_in_insulator[v];
    if (shared != static_cast<bool>(labels.vertex_on_interface[v]))
      throw TopologyError("subdomain closures meet away from the interface triangulation");
  }

  // Interface must be a connected surface, and simply connected: Euler
  // characteristic 1 (surface with boundary) or 2 (closed surface).
  {
    UnionFind uf(labels.interface_faces.size());
    std::vector<Index> edge_to_seen_face(ne, kInvalidIndex);
    for (std::size_t fi = 0; fi < labels.interface_faces.size(); ++fi) {
      const auto& fv = mesh.faces[static_cast<std::size_t>(labels.interface_faces[fi])];
      const std::array<Index, 3> fe{find_edge(mesh, fv[0], fv[1]), find_edge(mesh, fv[0], fv[2]),
                                    find_edge(mesh, fv[1], fv[2])};
      for (Index e : fe) {
        auto& seen = edge_to_seen_face[static_cast<std::size_t>(e)];
        if (seen == kInvalidIndex)
          seen = static_cast<Index>(fi);
        else
          uf.unite(seen, static_cast<Index>(fi));
      }
    }
    for (std::size_t fi = 1; fi < labels.interface_faces.size(); ++fi)
      if (uf.find(static_cast<Index>(fi)) != uf.find(0))
        throw ConfigError("conductor placement yields a disconnected interface");
    const long long chi = static_cast<long long>(labels.interface_vertices.size()) -
                          static_cast<long long>(labels.interface_edges.size()) +
                          static_cast<long long>(labels.interface_faces.size());
    if (chi != 1 && chi != 2)
      throw ConfigError("conductor placement yields a non-simply-connected interface (Euler characteristic " +
                        std::to_string(chi) + ")");
  }

  return labels;
}

} // namespace mqsfeti
