#include "homflow/min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "homflow/error.hpp"

namespace homflow {

void FlowNetwork::check() const {
  double sum = 0.0, scale = 1.0;
  for (double s : supply) {
    if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "non-finite supply");
    sum += s;
    scale = std::max(scale, std::abs(s));
  }
  if (std::abs(sum) > 1e-10 * scale)
    throw Error(ErrorCode::InvalidArgument, "supplies do not balance");
  for (const auto& a : arcs) {
    if (a.tail >= supply.size() || a.head >= supply.size())
      throw Error(ErrorCode::InvalidArgument, "arc endpoint out of range");
    if (!(a.cost >= 0.0) || !std::isfinite(a.cost))
      throw Error(ErrorCode::InvalidArgument, "arc costs must be finite and nonnegative");
    if (!(a.capacity > 0.0)) throw Error(ErrorCode::InvalidArgument, "arc capacity must be positive");
  }
}

namespace {

struct ResidualArc {
  std::size_t head;
  std::size_t arc;
  bool forward;
};

}  // namespace

FlowSolution solve_min_cost_flow(const FlowNetwork& net) {
  net.check();
  const std::size_t n = net.node_count();
  FlowSolution sol;
  sol.flow.assign(net.arcs.size(), 0.0);
  sol.potential.assign(n, 0.0);

  std::vector<std::vector<ResidualArc>> adj(n);
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    adj[net.arcs[a].tail].push_back({net.arcs[a].head, a, true});
    adj[net.arcs[a].head].push_back({net.arcs[a].tail, a, false});
  }
  double scale = 1.0;
  for (double s : net.supply) scale = std::max(scale, std::abs(s));
  const double tol = 1e-12 * scale;

  auto residual = [&](const ResidualArc& r) {
    return r.forward ? net.arcs[r.arc].capacity - sol.flow[r.arc] : sol.flow[r.arc];
  };
  auto arc_cost = [&](const ResidualArc& r) {
    return r.forward ? net.arcs[r.arc].cost : -net.arcs[r.arc].cost;
  };

  std::vector<double> excess = net.supply;
  std::vector<double> dist(n);
  std::vector<char> done(n);
  std::vector<std::size_t> prev_node(n);
  std::vector<const ResidualArc*> prev_arc(n);
  using Item = std::pair<double, std::size_t>;

  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    std::fill(prev_arc.begin(), prev_arc.end(), nullptr);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    bool any_source = false;
    for (std::size_t v = 0; v < n; ++v)
      if (excess[v] > tol) {
        dist[v] = 0.0;
        pq.emplace(0.0, v);
        any_source = true;
      }
    if (!any_source) break;

    std::size_t sink = n;
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      if (excess[u] < -tol) {
        sink = u;
        break;
      }
      for (const auto& r : adj[u]) {
        if (residual(r) <= tol) continue;
        const double rc = std::max(0.0, arc_cost(r) + sol.potential[u] - sol.potential[r.head]);
        if (d + rc < dist[r.head]) {
          dist[r.head] = d + rc;
          prev_node[r.head] = u;
          prev_arc[r.head] = &r;
          pq.emplace(dist[r.head], r.head);
        }
      }
    }
    if (sink == n)
      throw Error(ErrorCode::InfeasibleSupply, "excess cannot reach any deficit");
    const double dt = dist[sink];
    for (std::size_t v = 0; v < n; ++v) sol.potential[v] += std::min(dist[v], dt);

    double delta = -excess[sink];
    std::size_t v = sink;
    while (prev_arc[v]) {
      delta = std::min(delta, residual(*prev_arc[v]));
      v = prev_node[v];
    }
    const std::size_t source = v;
    delta = std::min(delta, excess[source]);
    for (v = sink; prev_arc[v]; v = prev_node[v]) {
      const auto& r = *prev_arc[v];
      sol.flow[r.arc] += r.forward ? delta : -delta;
    }
    excess[source] -= delta;
    excess[sink] += delta;
    ++sol.augmentations;
  }
  for (std::size_t a = 0; a < net.arcs.size(); ++a) sol.cost += net.arcs[a].cost * sol.flow[a];
  return sol;
}

LinearProgram to_linear_program(const FlowNetwork& net) {
  LinearProgram lp;
  std::vector<std::vector<LpTerm>> rows(net.node_count());
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    const auto& arc = net.arcs[a];
    const std::size_t var = lp.add_variable(arc.cost, 0.0, arc.capacity);
    rows[arc.tail].push_back({var, 1.0});
    rows[arc.head].push_back({var, -1.0});
  }
  for (std::size_t v = 0; v < net.node_count(); ++v)
    lp.add_row(std::move(rows[v]), RowSense::Equal, net.supply[v]);
  return lp;
}

}  // namespace homflow
