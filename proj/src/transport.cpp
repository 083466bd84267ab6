#include "homflow/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "homflow/error.hpp"
#include "homflow/lp.hpp"
#include "homflow/min_cost_flow.hpp"

namespace homflow {

const char* to_string(SolverTag tag) {
  switch (tag) {
    case SolverTag::Flow: return "flow";
    case SolverTag::Coupling: return "coupling";
    case SolverTag::Dual: return "dual";
  }
  return "unknown";
}

namespace {

void require_balanced(const RescaledGraph& rg, const DiscreteMeasure& m0, const DiscreteMeasure& m1) {
  if (m0.size() != rg.vertex_count() || m1.size() != rg.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "measure size does not match the graph");
  const double scale = std::max({1.0, m0.total_mass(), m1.total_mass()});
  if (std::abs(m0.total_mass() - m1.total_mass()) > 1e-10 * scale)
    throw Error(ErrorCode::MassMismatch, "total masses differ");
}

}  // namespace

double discrete_energy(const RescaledGraph& rg, const EdgeFlux& flux) {
  double f = 0.0;
  for (std::size_t e = 0; e < flux.size(); ++e) f += 2.0 * rg.edges()[e].alpha * std::abs(flux[e]);
  return f;
}

std::vector<double> edge_lengths(const RescaledGraph& rg) {
  std::vector<double> w(rg.edges().size());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = 2.0 * rg.edges()[e].alpha;
  return w;
}

PathResult graph_distance(const RescaledGraph& rg, std::size_t x, std::size_t y) {
  if (x >= rg.vertex_count() || y >= rg.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  // Search from the smaller index so that d(x, y) and d(y, x) agree bitwise.
  const auto w = edge_lengths(rg);
  const auto tree = dijkstra(rg.adjacency(), w, std::min(x, y));
  PathResult out{tree.dist[std::max(x, y)], tree.path_to(std::max(x, y))};
  if (x > y) std::reverse(out.path.begin(), out.path.end());
  return out;
}

std::vector<std::vector<double>> distances_from(const RescaledGraph& rg,
                                                std::span<const std::size_t> sources,
                                                Execution exec) {
  const auto w = edge_lengths(rg);
  return parallel_map<std::vector<double>>(sources.size(), exec, [&](std::size_t i) {
    return dijkstra(rg.adjacency(), w, sources[i]).dist;
  });
}

TransportResult ma_static(const RescaledGraph& rg, const DiscreteMeasure& m0,
                          const DiscreteMeasure& m1) {
  require_balanced(rg, m0, m1);
  FlowNetwork net;
  net.supply.resize(rg.vertex_count());
  for (std::size_t v = 0; v < net.supply.size(); ++v) net.supply[v] = m0[v] - m1[v];
  // Snap the residual imbalance allowed by require_balanced onto one node.
  double sum = 0.0;
  for (double s : net.supply) sum += s;
  if (!net.supply.empty()) net.supply[0] -= sum;
  for (const auto& e : rg.edges()) {
    net.arcs.push_back({e.tail, e.head, 2.0 * e.alpha, kInf});
    net.arcs.push_back({e.head, e.tail, 2.0 * e.alpha, kInf});
  }
  const auto sol = solve_min_cost_flow(net);
  TransportResult out;
  out.solver = SolverTag::Flow;
  out.flux.resize(rg.edges().size());
  for (std::size_t e = 0; e < out.flux.size(); ++e) out.flux[e] = sol.flow[2 * e] - sol.flow[2 * e + 1];
  out.value = discrete_energy(rg, out.flux);
  const auto div = divergence(rg, out.flux);
  for (std::size_t v = 0; v < div.size(); ++v)
    out.residual = std::max(out.residual, std::abs(div[v] - (m0[v] - m1[v])));
  return out;
}

TransportResult w1_coupling(const RescaledGraph& rg, const DiscreteMeasure& m0,
                            const DiscreteMeasure& m1, Execution exec) {
  require_balanced(rg, m0, m1);
  const auto src = m0.support();
  const auto dst = m1.support();
  const auto dist = distances_from(rg, src, exec);
  LinearProgram lp;
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < dst.size(); ++b) lp.add_variable(dist[a][dst[b]]);
  for (std::size_t a = 0; a < src.size(); ++a) {
    std::vector<LpTerm> row;
    for (std::size_t b = 0; b < dst.size(); ++b) row.push_back({a * dst.size() + b, 1.0});
    lp.add_row(std::move(row), RowSense::Equal, m0[src[a]]);
  }
  for (std::size_t b = 0; b < dst.size(); ++b) {
    std::vector<LpTerm> row;
    for (std::size_t a = 0; a < src.size(); ++a) row.push_back({a * dst.size() + b, 1.0});
    lp.add_row(std::move(row), RowSense::Equal, m1[dst[b]]);
  }
  TransportResult out;
  out.solver = SolverTag::Coupling;
  if (src.empty() && dst.empty()) return out;
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorCode::InternalConsistency,
                std::string("coupling LP reported ") + to_string(sol.status));
  out.value = sol.objective;
  out.duality_gap = sol.duality_gap;
  out.residual = sol.primal_residual;
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < dst.size(); ++b) {
      const double mass = sol.x[a * dst.size() + b];
      if (mass > 0.0) out.coupling.push_back({src[a], dst[b], mass});
    }
  return out;
}

TransportResult w1_dual(const RescaledGraph& rg, const DiscreteMeasure& m0,
                        const DiscreteMeasure& m1) {
  require_balanced(rg, m0, m1);
  LinearProgram lp;
  for (std::size_t v = 0; v < rg.vertex_count(); ++v) lp.add_variable(-(m0[v] - m1[v]), -kInf, kInf);
  for (const auto& e : rg.edges()) {
    lp.add_row({{e.head, 1.0}, {e.tail, -1.0}}, RowSense::LessEqual, 2.0 * e.alpha);
    lp.add_row({{e.tail, 1.0}, {e.head, -1.0}}, RowSense::LessEqual, 2.0 * e.alpha);
  }
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorCode::InternalConsistency,
                std::string("dual LP reported ") + to_string(sol.status));
  TransportResult out;
  out.solver = SolverTag::Dual;
  out.value = -sol.objective;
  out.potential = sol.x;
  out.duality_gap = sol.duality_gap;
  for (const auto& e : rg.edges())
    out.residual = std::max(out.residual, std::abs(out.potential[e.head] - out.potential[e.tail]) - 2.0 * e.alpha);
  out.residual = std::max(out.residual, 0.0);
  return out;
}

std::vector<EdgeViolation> support_edge_check(const RescaledGraph& rg, const EdgeFlux& flux,
                                              double flux_tol, double tol) {
  if (flux.size() != rg.edges().size())
    throw Error(ErrorCode::InvalidArgument, "flux size does not match edge count");
  const auto w = edge_lengths(rg);
  std::map<std::size_t, std::vector<double>> from_tail;
  std::vector<EdgeViolation> out;
  for (std::size_t e = 0; e < flux.size(); ++e) {
    if (std::abs(flux[e]) <= flux_tol) continue;
    const auto& edge = rg.edges()[e];
    auto it = from_tail.find(edge.tail);
    if (it == from_tail.end())
      it = from_tail.emplace(edge.tail, dijkstra(rg.adjacency(), w, edge.tail).dist).first;
    const double d = it->second[edge.head];
    if (std::abs(d - w[e]) > tol) out.push_back({e, d, w[e]});
  }
  return out;
}

double continuity_residual(const RescaledGraph& rg, const DynamicCurve& curve) {
  double worst = 0.0;
  for (std::size_t k = 0; k < curve.fluxes.size(); ++k) {
    const double dt = curve.times[k + 1] - curve.times[k];
    const auto div = divergence(rg, curve.fluxes[k]);
    for (std::size_t v = 0; v < div.size(); ++v)
      worst = std::max(worst, std::abs((curve.masses[k + 1][v] - curve.masses[k][v]) / dt + div[v]));
  }
  return worst;
}

DiscreteMeasure Contraction::mass_at(double t) const {
  std::vector<double> w(start.size());
  for (std::size_t v = 0; v < w.size(); ++v) w[v] = std::max(0.0, start[v] + t * (end[v] - start[v]));
  return DiscreteMeasure(std::move(w));
}

Contraction contract_dynamic(const RescaledGraph& rg, const DynamicCurve& curve) {
  const std::size_t k = curve.fluxes.size();
  if (k == 0 || curve.times.size() != k + 1 || curve.masses.size() != k + 1)
    throw Error(ErrorCode::InvalidCurve, "need K fluxes, K + 1 masses and K + 1 breakpoints");
  if (std::abs(curve.times.front()) > 1e-12 || std::abs(curve.times.back() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidCurve, "time grid must run from 0 to 1");
  for (std::size_t i = 0; i < k; ++i)
    if (!(curve.times[i + 1] > curve.times[i]))
      throw Error(ErrorCode::InvalidCurve, "time grid must be strictly increasing");
  for (const auto& m : curve.masses)
    if (m.size() != rg.vertex_count())
      throw Error(ErrorCode::InvalidCurve, "mass vector size does not match the graph");
  for (const auto& j : curve.fluxes)
    if (j.size() != rg.edges().size())
      throw Error(ErrorCode::InvalidCurve, "flux size does not match the graph");
  const double total = curve.masses.front().total_mass();
  for (const auto& m : curve.masses)
    if (std::abs(m.total_mass() - total) > 1e-10)
      throw Error(ErrorCode::InvalidCurve, "total mass is not preserved");
  const double res = continuity_residual(rg, curve);
  if (res > 1e-9)
    throw Error(ErrorCode::InvalidCurve, "continuity residual " + std::to_string(res));

  Contraction out;
  out.start = curve.masses.front();
  out.end = curve.masses.back();
  out.flux.assign(rg.edges().size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double dt = curve.times[i + 1] - curve.times[i];
    for (std::size_t e = 0; e < out.flux.size(); ++e) out.flux[e] += dt * curve.fluxes[i][e];
    out.energy_before += dt * discrete_energy(rg, curve.fluxes[i]);
  }
  out.energy_after = discrete_energy(rg, out.flux);
  const auto div = divergence(rg, out.flux);
  for (std::size_t v = 0; v < div.size(); ++v)
    out.divergence_residual =
        std::max(out.divergence_residual, std::abs(div[v] - (out.start[v] - out.end[v])));
  return out;
}

// -- torus utilities -------------------------------------------------------

double torus_fhom_distance(const Gauge& gauge, std::span<const double> p,
                           std::span<const double> q, int shift_radius) {
  if (p.size() != q.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const int d = static_cast<int>(p.size());
  const int side = 2 * shift_radius + 1;
  int count = 1;
  for (int c = 0; c < d; ++c) count *= side;
  Vec diff(d);
  double best = kInf;
  for (int code = 0; code < count; ++code) {
    int rem = code;
    for (int c = d - 1; c >= 0; --c) {
      const int k = rem % side - shift_radius;
      rem /= side;
      diff[c] = q[c] - p[c] + k;
    }
    best = std::min(best, gauge(diff));
  }
  return best;
}

double torus_euclidean_distance(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    double d = std::abs(q[c] - p[c]);
    d -= std::floor(d);
    d = std::min(d, 1.0 - d);
    s += d * d;
  }
  return std::sqrt(s);
}

double point_set_w1(const std::vector<WeightedPoint>& mu, const std::vector<WeightedPoint>& nu,
                    const std::function<double(std::span<const double>, std::span<const double>)>& cost) {
  double tm = 0.0, tn = 0.0;
  for (const auto& p : mu) tm += p.weight;
  for (const auto& p : nu) tn += p.weight;
  if (std::abs(tm - tn) > 1e-10 * std::max({1.0, tm, tn}))
    throw Error(ErrorCode::MassMismatch, "point sets carry different total mass");
  FlowNetwork net;
  for (const auto& p : mu) net.supply.push_back(p.weight);
  for (const auto& p : nu) net.supply.push_back(-p.weight);
  net.supply.back() -= tm - tn;
  for (std::size_t a = 0; a < mu.size(); ++a)
    for (std::size_t b = 0; b < nu.size(); ++b)
      net.arcs.push_back({a, mu.size() + b, cost(mu[a].pos, nu[b].pos), kInf});
  return solve_min_cost_flow(net).cost;
}

double kr_distance(const std::vector<WeightedPoint>& mu, const std::vector<WeightedPoint>& nu) {
  return point_set_w1(mu, nu, [](std::span<const double> a, std::span<const double> b) {
    return torus_euclidean_distance(a, b);
  });
}

DiscreteMeasure embed_points(const RescaledGraph& rg, const std::vector<WeightedPoint>& points) {
  std::vector<double> w(rg.vertex_count(), 0.0);
  const int n = rg.cells_per_side();
  std::vector<int> cell(rg.dim());
  for (const auto& p : points) {
    if (static_cast<int>(p.pos.size()) != rg.dim())
      throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
    for (int c = 0; c < rg.dim(); ++c) {
      const double x = p.pos[c] - std::floor(p.pos[c]);
      cell[c] = std::min(n - 1, static_cast<int>(std::floor(x * n)));
    }
    w[rg.vertex(cell, 0)] += p.weight;
  }
  return DiscreteMeasure(std::move(w));
}

std::size_t snap_to_vertex(const RescaledGraph& rg, std::span<const double> p) {
  std::size_t best = 0;
  double best_d = kInf;
  for (std::size_t v = 0; v < rg.vertex_count(); ++v) {
    const double d = torus_euclidean_distance(rg.position(v), p);
    if (d < best_d - 1e-12) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

std::vector<WeightedPoint> as_points(const RescaledGraph& rg, const DiscreteMeasure& m) {
  std::vector<WeightedPoint> out;
  for (std::size_t v : m.support()) out.push_back({rg.position(v), m[v]});
  return out;
}

}  // namespace homflow
