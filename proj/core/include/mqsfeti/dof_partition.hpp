#pragma once

#include "mqsfeti/tree_cotree.hpp"

namespace mqsfeti {

/// Compact DOF numbering induced by the tree-cotree splitting.
///
/// Edge spaces (one DOF per cotree edge):
///   V   — cotree edges of the whole mesh,
///   V_C — cotree edges of the conductor closure,
///   V_I — cotree edges of the insulator closure,
///   V_G — cotree edges on the interface (= V_C ∩ V_I as edge sets).
/// Nodal spaces (H1 modulo constants, realized by pinning the tree root):
///   U   — all vertices except the root,
///   U_C — conductor-closure vertices except the root.
/// All maps are ascending in the global entity index.
struct DofPartition {
  Index root = kInvalidIndex;

  std::vector<Index> edge_to_V, edge_to_VC, edge_to_VI, edge_to_VG; // kInvalidIndex where absent
  std::vector<Index> V_edges, VC_edges, VI_edges, VG_edges;

  std::vector<Index> vertex_to_U, vertex_to_UC;
  std::vector<Index> U_vertices, UC_vertices;

  Index dim_V() const { return static_cast<Index>(V_edges.size()); }
  Index dim_VC() const { return static_cast<Index>(VC_edges.size()); }
  Index dim_VI() const { return static_cast<Index>(VI_edges.size()); }
  Index dim_VG() const { return static_cast<Index>(VG_edges.size()); }
  Index dim_U() const { return static_cast<Index>(U_vertices.size()); }
  Index dim_UC() const { return static_cast<Index>(UC_vertices.size()); }
};

/// Builds the DOF partition and validates the dimension identities of a
/// splitting compatible with the decomposition, e.g.
/// #edges = (#vertices - 1) + dim V globally and per closure, and
/// #interface edges = (#interface vertices - 1) + dim V_G.
DofPartition build_partition(const Mesh& mesh, const EntityLabels& labels, const TreeCotree& trees);

/// Signed incidence matrices realizing the discrete gradient (nodal values to
/// edge differences, head minus tail).
struct IncidenceGradient {
  SpMatR G;      // n_edges x dim U, root column removed
  SpMatR G_full; // n_edges x n_vertices, no pinning
  SpMatR G0;     // n_edges x #vertices outside the conductor closure
  SpMatR G_C;    // |conductor edges| x dim U_C
  SpMatR G_I;    // |insulator edges| x dim U_I (insulator-closure vertices minus root)

  std::vector<Index> outside_conductor_vertices; // column order of G0
  std::vector<Index> UI_vertices;                // column order of G_I
};

IncidenceGradient build_gradient(const Mesh& mesh, const EntityLabels& labels,
                                 const DofPartition& partition);

} // namespace mqsfeti
