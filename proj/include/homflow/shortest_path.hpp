#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace homflow {

/// Incident (edge index, neighbour) pairs per vertex of an undirected graph.
using Adjacency = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<std::size_t> parent;       // kNoVertex at the root and unreached vertices
  std::vector<std::size_t> parent_edge;

  /// Vertices from the root to `target`, empty if unreachable.
  std::vector<std::size_t> path_to(std::size_t target) const;
};

/// Dijkstra over nonnegative edge weights; ties resolve toward lower vertex
/// indices, so the tree is deterministic.
ShortestPathTree dijkstra(const Adjacency& adjacency, std::span<const double> edge_weight,
                          std::size_t source);

}  // namespace homflow
