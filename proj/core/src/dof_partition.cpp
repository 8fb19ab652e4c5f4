#include "mqsfeti/dof_partition.hpp"

#include "mqsfeti/errors.hpp"
#include "mqsfeti/sparse_util.hpp"

#include <algorithm>

namespace mqsfeti {

namespace {

// Compact ascending numbering of the selected entities.
void number(const std::vector<Index>& selected, std::vector<Index>& entity_to_dof,
            std::vector<Index>& dof_to_entity, std::size_t n_entities) {
  entity_to_dof.assign(n_entities, kInvalidIndex);
  dof_to_entity = selected;
  for (Index d = 0; d < static_cast<Index>(selected.size()); ++d)
    entity_to_dof[static_cast<std::size_t>(selected[d])] = d;
}

} // namespace

DofPartition build_partition(const Mesh& mesh, const EntityLabels& labels, const TreeCotree& trees) {
  const std::size_t ne = static_cast<std::size_t>(mesh.n_edges());
  const std::size_t nv = static_cast<std::size_t>(mesh.n_vertices());
  if (trees.edge_in_tree.size() != ne) throw TopologyError("tree flags do not match the mesh");

  DofPartition p;
  p.root = trees.root;

  std::vector<Index> cotree, cotree_C, cotree_I, cotree_G;
  for (Index e = 0; e < static_cast<Index>(ne); ++e) {
    if (trees.edge_in_tree[static_cast<std::size_t>(e)]) continue;
    cotree.push_back(e);
    if (labels.edge_in_conductor[static_cast<std::size_t>(e)]) cotree_C.push_back(e);
    if (labels.edge_in_insulator[static_cast<std::size_t>(e)]) cotree_I.push_back(e);
    if (labels.edge_on_interface[static_cast<std::size_t>(e)]) cotree_G.push_back(e);
  }
  number(cotree, p.edge_to_V, p.V_edges, ne);
  number(cotree_C, p.edge_to_VC, p.VC_edges, ne);
  number(cotree_I, p.edge_to_VI, p.VI_edges, ne);
  number(cotree_G, p.edge_to_VG, p.VG_edges, ne);

  std::vector<Index> u_vertices, uc_vertices;
  for (Index v = 0; v < static_cast<Index>(nv); ++v)
    if (v != p.root) u_vertices.push_back(v);
  for (Index v : labels.conductor_vertices)
    if (v != p.root) uc_vertices.push_back(v);
  number(u_vertices, p.vertex_to_U, p.U_vertices, nv);
  number(uc_vertices, p.vertex_to_UC, p.UC_vertices, nv);

  // Dimension identities of the compatible splitting.
  const auto expect = [](long long got, long long want, const char* what) {
    if (got != want) throw TopologyError(std::string(what) + " dimension identity violated");
  };
  expect(p.dim_V(), static_cast<long long>(mesh.n_edges()) - (mesh.n_vertices() - 1), "global");
  expect(p.dim_VC(),
         static_cast<long long>(labels.conductor_edges.size()) -
             (static_cast<long long>(labels.conductor_vertices.size()) - 1),
         "conductor");
  expect(p.dim_VI(),
         static_cast<long long>(labels.insulator_edges.size()) -
             (static_cast<long long>(labels.insulator_vertices.size()) - 1),
         "insulator");
  expect(p.dim_VG(),
         static_cast<long long>(labels.interface_edges.size()) -
             (static_cast<long long>(labels.interface_vertices.size()) - 1),
         "interface");

  // Restriction property: the global cotree restricted to a closure must be
  // exactly that closure's cotree. Violation means the interface tree was
  // not continued properly.
  for (Index e : p.VC_edges)
    if (!labels.edge_in_conductor[static_cast<std::size_t>(e)])
      throw TopologyError("conductor cotree contains a non-conductor edge");
  for (Index e : labels.conductor_edges)
    if (!trees.edge_in_tree[static_cast<std::size_t>(e)] &&
        p.edge_to_VC[static_cast<std::size_t>(e)] == kInvalidIndex)
      throw TopologyError("conductor cotree restriction mismatch");

  return p;
}

IncidenceGradient build_gradient(const Mesh& mesh, const EntityLabels& labels,
                                 const DofPartition& partition) {
  const Index ne = mesh.n_edges();
  const Index nv = mesh.n_vertices();

  IncidenceGradient g;

  TripletBuffer<double> full;
  full.reserve(static_cast<std::size_t>(ne) * 2);
  for (Index e = 0; e < ne; ++e) {
    const auto [tail, head] = mesh.edges[static_cast<std::size_t>(e)];
    full.add(e, tail, -1.0);
    full.add(e, head, +1.0);
  }
  g.G_full = full.build(ne, nv);

  const auto restrict_columns = [&](const std::vector<Index>& vertex_to_col, Index n_cols) {
    TripletBuffer<double> buf;
    for (Index e = 0; e < ne; ++e) {
      const auto [tail, head] = mesh.edges[static_cast<std::size_t>(e)];
      if (const Index c = vertex_to_col[static_cast<std::size_t>(tail)]; c != kInvalidIndex)
        buf.add(e, c, -1.0);
      if (const Index c = vertex_to_col[static_cast<std::size_t>(head)]; c != kInvalidIndex)
        buf.add(e, c, +1.0);
    }
    return buf.build(ne, n_cols);
  };

  g.G = restrict_columns(partition.vertex_to_U, partition.dim_U());

  for (Index v = 0; v < nv; ++v)
    if (!labels.vertex_in_conductor[static_cast<std::size_t>(v)])
      g.outside_conductor_vertices.push_back(v);
  std::vector<Index> vertex_to_G0(static_cast<std::size_t>(nv), kInvalidIndex);
  for (Index c = 0; c < static_cast<Index>(g.outside_conductor_vertices.size()); ++c)
    vertex_to_G0[static_cast<std::size_t>(g.outside_conductor_vertices[c])] = c;
  g.G0 = restrict_columns(vertex_to_G0, static_cast<Index>(g.outside_conductor_vertices.size()));

  // Subdomain restrictions: rows are the closure's edges (ascending), columns
  // the closure's vertices minus the root.
  const auto restrict_both = [&](const std::vector<Index>& edge_list,
                                 const std::vector<Index>& vertex_list,
                                 std::vector<Index>* col_vertices) {
    std::vector<Index> vertex_to_col(static_cast<std::size_t>(nv), kInvalidIndex);
    Index c = 0;
    for (Index v : vertex_list)
      if (v != partition.root) {
        vertex_to_col[static_cast<std::size_t>(v)] = c++;
        if (col_vertices) col_vertices->push_back(v);
      }
    TripletBuffer<double> buf;
    for (Index r = 0; r < static_cast<Index>(edge_list.size()); ++r) {
      const auto [tail, head] = mesh.edges[static_cast<std::size_t>(edge_list[static_cast<std::size_t>(r)])];
      if (const Index col = vertex_to_col[static_cast<std::size_t>(tail)]; col != kInvalidIndex)
        buf.add(r, col, -1.0);
      if (const Index col = vertex_to_col[static_cast<std::size_t>(head)]; col != kInvalidIndex)
        buf.add(r, col, +1.0);
    }
    return buf.build(static_cast<Index>(edge_list.size()), c);
  };

  g.G_C = restrict_both(labels.conductor_edges, labels.conductor_vertices, nullptr);
  g.G_I = restrict_both(labels.insulator_edges, labels.insulator_vertices, &g.UI_vertices);

  return g;
}

} // namespace mqsfeti
