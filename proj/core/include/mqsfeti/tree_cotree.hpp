#pragma once

#include "mqsfeti/labels.hpp"

#include <span>
#include <vector>

namespace mqsfeti {

namespace graph {

struct GraphEdge {
  Index id; // caller-defined edge identifier
  Index a, b;
};

struct SpanningForest {
  std::vector<Index> tree_edges;      // ascending by id
  std::vector<Index> reached_vertices; // ascending
};

/// Breadth-first spanning tree of the graph given by `edges`, grown from the
/// seed vertices (taken in the given order, all treated as already spanned).
/// Neighbors are visited in ascending edge id, which makes the tree a pure
/// function of the input.
SpanningForest bfs_spanning_tree(std::span<const GraphEdge> edges, std::span<const Index> seeds);

} // namespace graph

/// Interface-first tree-cotree splitting: a spanning tree of the interface
/// graph, continued by extensions into each subdomain closure, so that the
/// union is a spanning tree of the whole mesh graph and its restriction to
/// either closure is a spanning tree of that closure.
struct TreeCotree {
  Index root = kInvalidIndex;
  std::vector<Index> interface_tree;       // spanning tree of the interface graph
  std::vector<Index> conductor_extension;  // continuation within the conductor closure
  std::vector<Index> insulator_extension;  // continuation within the insulator closure
  std::vector<std::uint8_t> edge_in_tree;  // one flag per mesh edge

  std::size_t tree_size() const {
    return interface_tree.size() + conductor_extension.size() + insulator_extension.size();
  }
};

/// Spanning tree of the interface vertex-edge graph rooted at `root`.
/// Throws TopologyError if the interface is empty or disconnected or the
/// root is not an interface vertex.
std::vector<Index> build_interface_tree(const Mesh& mesh, const EntityLabels& labels, Index root);

/// Extends an interface spanning tree to the given subdomain closure.
/// Returns the extension edges only. Throws TopologyError if part of the
/// subdomain graph is unreachable from the interface.
std::vector<Index> extend_tree(const Mesh& mesh, const EntityLabels& labels,
                               std::span<const Index> interface_tree, Region subdomain);

/// Convenience composition of the three construction steps. The default root
/// is the smallest interface vertex index.
TreeCotree build_tree_cotree(const Mesh& mesh, const EntityLabels& labels,
                             Index root = kInvalidIndex);

} // namespace mqsfeti
