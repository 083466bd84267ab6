#include "homflow/shortest_path.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "homflow/error.hpp"

namespace homflow {

std::vector<std::size_t> ShortestPathTree::path_to(std::size_t target) const {
  std::vector<std::size_t> path;
  if (dist[target] == std::numeric_limits<double>::infinity()) return path;
  for (std::size_t v = target; v != kNoVertex; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree dijkstra(const Adjacency& adjacency, std::span<const double> edge_weight,
                          std::size_t source) {
  const std::size_t n = adjacency.size();
  if (source >= n) throw Error(ErrorCode::InvalidArgument, "source vertex out of range");
  ShortestPathTree tree;
  tree.dist.assign(n, std::numeric_limits<double>::infinity());
  tree.parent.assign(n, kNoVertex);
  tree.parent_edge.assign(n, kNoVertex);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  tree.dist[source] = 0.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [e, v] : adjacency[u]) {
      const double nd = d + edge_weight[e];
      if (nd < tree.dist[v]) {
        tree.dist[v] = nd;
        tree.parent[v] = u;
        tree.parent_edge[v] = e;
        pq.emplace(nd, v);
      }
    }
  }
  return tree;
}

}  // namespace homflow
