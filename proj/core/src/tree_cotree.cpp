#include "mqsfeti/tree_cotree.hpp"

#include "mqsfeti/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

namespace mqsfeti {

namespace graph {

SpanningForest bfs_spanning_tree(std::span<const GraphEdge> edges, std::span<const Index> seeds) {
  // Adjacency keyed by vertex id; lists sorted by edge id for determinism.
  std::map<Index, std::vector<std::pair<Index, Index>>> adjacency; // vertex -> (edge id, other)
  for (const auto& e : edges) {
    adjacency[e.a].emplace_back(e.id, e.b);
    adjacency[e.b].emplace_back(e.id, e.a);
  }
  for (auto& [v, list] : adjacency) std::sort(list.begin(), list.end());

  SpanningForest forest;
  std::map<Index, bool> visited;
  std::deque<Index> queue;
  for (Index s : seeds) {
    if (!visited[s]) {
      visited[s] = true;
      queue.push_back(s);
      forest.reached_vertices.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    const auto it = adjacency.find(v);
    if (it == adjacency.end()) continue;
    for (const auto& [eid, other] : it->second) {
      if (visited[other]) continue;
      visited[other] = true;
      forest.tree_edges.push_back(eid);
      forest.reached_vertices.push_back(other);
      queue.push_back(other);
    }
  }
  std::sort(forest.tree_edges.begin(), forest.tree_edges.end());
  std::sort(forest.reached_vertices.begin(), forest.reached_vertices.end());
  return forest;
}

} // namespace graph

namespace {

std::vector<graph::GraphEdge> edge_list(const Mesh& mesh, std::span<const Index> edge_ids) {
  std::vector<graph::GraphEdge> list;
  list.reserve(edge_ids.size());
  for (Index e : edge_ids)
    list.push_back({e, mesh.edges[static_cast<std::size_t>(e)][0],
                    mesh.edges[static_cast<std::size_t>(e)][1]});
  return list;
}

} // namespace

std::vector<Index> build_interface_tree(const Mesh& mesh, const EntityLabels& labels, Index root) {
  if (labels.interface_vertices.empty() || labels.interface_edges.empty())
    throw TopologyError("interface is empty");
  if (!std::binary_search(labels.interface_vertices.begin(), labels.interface_vertices.end(), root))
    throw TopologyError("interface tree root is not an interface vertex");

  const auto edges = edge_list(mesh, labels.interface_edges);
  const std::array<Index, 1> seeds{root};
  auto forest = graph::bfs_spanning_tree(edges, seeds);
  if (forest.reached_vertices.size() != labels.interface_vertices.size())
    throw TopologyError("interface graph is disconnected");
  return std::move(forest.tree_edges);
}

std::vector<Index> extend_tree(const Mesh& mesh, const EntityLabels& labels,
                               std::span<const Index> interface_tree, Region subdomain) {
  if (interface_tree.size() + 1 != labels.interface_vertices.size())
    throw TopologyError("interface tree does not span the interface graph");

  const auto& subdomain_edges =
      subdomain == Region::Conductor ? labels.conductor_edges : labels.insulator_edges;
  const auto& subdomain_vertices =
      subdomain == Region::Conductor ? labels.conductor_vertices : labels.insulator_vertices;

  const auto edges = edge_list(mesh, subdomain_edges);
  auto forest = graph::bfs_spanning_tree(edges, labels.interface_vertices);
  if (forest.reached_vertices.size() != subdomain_vertices.size())
    throw TopologyError("subdomain graph is disconnected from the interface");
  return std::move(forest.tree_edges);
}

TreeCotree build_tree_cotree(const Mesh& mesh, const EntityLabels& labels, Index root) {
  TreeCotree tc;
  tc.root = root == kInvalidIndex ? labels.interface_vertices.front() : root;
  tc.interface_tree = build_interface_tree(mesh, labels, tc.root);
  tc.conductor_extension = extend_tree(mesh, labels, tc.interface_tree, Region::Conductor);
  tc.insulator_extension = extend_tree(mesh, labels, tc.interface_tree, Region::Insulator);

  tc.edge_in_tree.assign(static_cast<std::size_t>(mesh.n_edges()), 0);
  for (const auto* part : {&tc.interface_tree, &tc.conductor_extension, &tc.insulator_extension})
    for (Index e : *part) {
      if (tc.edge_in_tree[static_cast<std::size_t>(e)])
        throw TopologyError("tree parts overlap on edge " + std::to_string(e));
      tc.edge_in_tree[static_cast<std::size_t>(e)] = 1;
    }

  if (tc.tree_size() + 1 != static_cast<std::size_t>(mesh.n_vertices()))
    throw TopologyError("tree does not span the mesh graph");
  if (tc.interface_tree.size() + tc.conductor_extension.size() + 1 !=
      labels.conductor_vertices.size())
    throw TopologyError("tree restricted to the conductor closure is not spanning");
  if (tc.interface_tree.size() + tc.insulator_extension.size() + 1 !=
      labels.insulator_vertices.size())
    throw TopologyError("tree restricted to the insulator closure is not spanning");
  return tc;
}

} // namespace mqsfeti
