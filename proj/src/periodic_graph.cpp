#include "homflow/periodic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "homflow/error.hpp"

namespace homflow {
namespace {

bool first_nonzero_positive(const Shift& k) {
  for (int c : k)
    if (c != 0) return c > 0;
  return false;
}

Shift negated(std::span<const int> k) {
  Shift out(k.begin(), k.end());
  for (int& c : out) c = -c;
  return out;
}

// Flip to the canonical orientation. Returns false for a zero-shift loop.
bool canonicalize(EdgeOrbit& o) {
  bool flip = false;
  if (o.from > o.to) {
    flip = true;
  } else if (o.from == o.to) {
    if (std::all_of(o.shift.begin(), o.shift.end(), [](int c) { return c == 0; })) return false;
    flip = !first_nonzero_positive(o.shift);
  }
  if (flip) {
    std::swap(o.from, o.to);
    o.shift = negated(o.shift);
    std::swap(o.alpha, o.alpha_reverse);
  }
  return true;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// True iff the integer vectors generate all of Z^dim.
bool spans_integer_lattice(std::vector<std::vector<long>> rows, int dim) {
  std::size_t next = 0;
  for (int col = 0; col < dim; ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = next; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || std::labs(rows[r][col]) < std::labs(rows[best][col])) best = r;
      }
      if (best == rows.size()) return false;
      std::swap(rows[next], rows[best]);
      bool reduced = true;
      for (std::size_t r = next + 1; r < rows.size(); ++r) {
        const long q = rows[r][col] / rows[next][col];
        if (q != 0)
          for (int c = 0; c < dim; ++c) rows[r][c] -= q * rows[next][c];
        if (rows[r][col] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (std::labs(rows[next][col]) != 1) return false;
    ++next;
  }
  return true;
}

}  // namespace

PeriodicGraph::PeriodicGraph(int dim, std::vector<FiberVertex> fiber,
                             std::vector<EdgeOrbit> orbits, std::string name)
    : dim_(dim), name_(std::move(name)), fiber_(std::move(fiber)), orbits_(std::move(orbits)) {
  if (dim_ < 1) throw Error(ErrorCode::InvalidGraph, "dimension must be positive");
  if (fiber_.empty()) throw Error(ErrorCode::InvalidGraph, "empty fiber");
  for (const auto& v : fiber_) {
    if (static_cast<int>(v.pos.size()) != dim_)
      throw Error(ErrorCode::InvalidGraph, "position of '" + v.id + "' has wrong dimension");
    for (double p : v.pos)
      if (!(p >= 0.0 && p < 1.0))
        throw Error(ErrorCode::InvalidGraph, "position of '" + v.id + "' outside [0,1)");
  }
  const int nv = static_cast<int>(fiber_.size());
  std::map<std::pair<std::pair<int, int>, Shift>, std::size_t> seen;
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    auto& o = orbits_[i];
    if (o.from < 0 || o.from >= nv || o.to < 0 || o.to >= nv)
      throw Error(ErrorCode::InvalidGraph, "orbit endpoint out of range");
    if (static_cast<int>(o.shift.size()) != dim_)
      throw Error(ErrorCode::InvalidGraph, "orbit shift has wrong dimension");
    if (!canonicalize(o)) throw Error(ErrorCode::InvalidGraph, "loop orbit with zero shift");
    auto key = std::make_pair(std::make_pair(o.from, o.to), o.shift);
    if (!seen.emplace(key, i).second) throw Error(ErrorCode::InvalidGraph, "duplicate orbit");
    Vec d(dim_);
    for (int c = 0; c < dim_; ++c) {
      d[c] = o.shift[c] + fiber_[o.to].pos[c] - fiber_[o.from].pos[c];
      range_ = std::max(range_, std::abs(o.shift[c]));
    }
    displacements_.push_back(std::move(d));
  }
}

std::optional<std::size_t> PeriodicGraph::find_fiber(const std::string& id) const {
  for (std::size_t i = 0; i < fiber_.size(); ++i)
    if (fiber_[i].id == id) return i;
  return std::nullopt;
}

std::optional<OrbitRef> PeriodicGraph::find_orbit(int from, int to,
                                                  std::span<const int> shift) const {
  const Shift rev = negated(shift);
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    const auto& o = orbits_[i];
    if (o.from == from && o.to == to && std::equal(o.shift.begin(), o.shift.end(), shift.begin(), shift.end()))
      return OrbitRef{i, false};
    if (o.from == to && o.to == from && o.shift == rev) return OrbitRef{i, true};
  }
  return std::nullopt;
}

std::vector<OrientedEdge> PeriodicGraph::oriented_edges() const {
  std::vector<OrientedEdge> out;
  out.reserve(2 * orbits_.size());
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    const auto& o = orbits_[i];
    out.push_back({i, false, o.from, o.to, o.shift, o.alpha, displacements_[i]});
    Vec back = displacements_[i];
    for (double& c : back) c = -c;
    out.push_back({i, true, o.to, o.from, negated(o.shift), o.alpha_reverse, std::move(back)});
  }
  return out;
}

void PeriodicFlux::add(const PeriodicGraph& g, int from, int to, std::span<const int> shift,
                       double value) {
  auto ref = g.find_orbit(from, to, shift);
  if (!ref) throw Error(ErrorCode::InvalidArgument, "no orbit for the requested edge");
  if (values_.size() != g.orbit_count()) values_.resize(g.orbit_count(), 0.0);
  values_[ref->index] += ref->reversed ? -value : value;
}

ValidationReport validate_graph(const PeriodicGraph& g) {
  ValidationReport rep;
  const int d = g.dim();
  const std::size_t nv = g.fiber_size();
  rep.range = g.range();
  rep.has_edges = g.orbit_count() > 0;
  if (!rep.has_edges) rep.failures.push_back("graph has no edges");

  const auto edges = g.oriented_edges();
  rep.symmetric = true;
  for (const auto& e : edges)
    if (!g.find_orbit(e.to, e.from, negated(e.shift))) rep.symmetric = false;
  if (!rep.symmetric) rep.failures.push_back("edge set is not symmetric");

  rep.positive_weights = true;
  for (const auto& o : g.orbits())
    if (!(o.alpha > 0.0 && o.alpha_reverse > 0.0 && std::isfinite(o.alpha) &&
          std::isfinite(o.alpha_reverse)))
      rep.positive_weights = false;
  if (!rep.positive_weights) rep.failures.push_back("non-positive edge weight");

  rep.degrees.assign(nv, 0);
  for (const auto& e : edges) ++rep.degrees[e.from];

  // Box cover of side 2 R0 + 1 centred at the origin cell.
  const int side = 2 * rep.range + 1;
  std::size_t cells = 1;
  for (int c = 0; c < d; ++c) cells *= side;
  UnionFind box(cells * nv);
  std::vector<int> z(d);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rem = cell;
    for (int c = d - 1; c >= 0; --c) {
      z[c] = static_cast<int>(rem % side) - rep.range;
      rem /= side;
    }
    for (const auto& e : edges) {
      std::size_t other = 0;
      bool inside = true;
      for (int c = 0; c < d; ++c) {
        const int zc = z[c] + e.shift[c];
        if (zc < -rep.range || zc > rep.range) inside = false;
        other = other * side + static_cast<std::size_t>(zc + rep.range);
      }
      if (inside) box.unite(cell * nv + e.from, other * nv + e.to);
    }
  }
  rep.cover_connected = true;
  for (std::size_t i = 1; i < cells * nv; ++i)
    if (box.find(i) != box.find(0)) rep.cover_connected = false;
  if (!rep.cover_connected) rep.failures.push_back("disconnected on the finite cover");

  // Exact criterion: quotient graph connected and cycle shifts generate Z^d.
  std::vector<std::vector<long>> offset(nv);
  offset[0].assign(d, 0);
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop();
    for (const auto& e : edges) {
      if (e.from != v || !offset[e.to].empty()) continue;
      offset[e.to].resize(d);
      for (int c = 0; c < d; ++c) offset[e.to][c] = offset[v][c] + e.shift[c];
      bfs.push(e.to);
    }
  }
  const bool quotient_connected =
      std::all_of(offset.begin(), offset.end(), [](const auto& o) { return !o.empty(); });
  rep.lattice_connected = false;
  if (quotient_connected) {
    std::vector<std::vector<long>> cycles;
    for (const auto& o : g.orbits()) {
      std::vector<long> c(d);
      for (int k = 0; k < d; ++k) c[k] = offset[o.from][k] + o.shift[k] - offset[o.to][k];
      cycles.push_back(std::move(c));
    }
    rep.lattice_connected = spans_integer_lattice(std::move(cycles), d);
  }
  if (!rep.lattice_connected) rep.failures.push_back("induced periodic graph is disconnected");
  return rep;
}

Vec divergence(const PeriodicGraph& g, const PeriodicFlux& flux) {
  Vec div(g.fiber_size(), 0.0);
  for (std::size_t i = 0; i < g.orbit_count(); ++i) {
    const auto& o = g.orbits()[i];
    div[o.from] += flux[i];
    div[o.to] -= flux[i];
  }
  return div;
}

Vec effective_flux(const PeriodicGraph& g, const PeriodicFlux& flux) {
  // The two orientations of an orbit contribute J d / 2 each.
  Vec eff(g.dim(), 0.0);
  for (std::size_t i = 0; i < g.orbit_count(); ++i)
    for (int c = 0; c < g.dim(); ++c) eff[c] += flux[i] * g.displacement(i)[c];
  return eff;
}

double cell_energy(const PeriodicGraph& g, const PeriodicFlux& flux) {
  double f = 0.0;
  for (std::size_t i = 0; i < g.orbit_count(); ++i) f += g.orbit_cost(i) * std::abs(flux[i]);
  return f;
}

double default_alpha(std::span<const double> displacement) {
  double s = 0.0;
  for (double c : displacement) s += c * c;
  return 0.5 * std::sqrt(s);
}

namespace {

EdgeOrbit weighted_orbit(const std::vector<FiberVertex>& fiber, int from, int to, Shift shift) {
  Vec d(shift.size());
  for (std::size_t c = 0; c < shift.size(); ++c) d[c] = shift[c] + fiber[to].pos[c] - fiber[from].pos[c];
  const double a = default_alpha(d);
  return EdgeOrbit{from, to, std::move(shift), a, a};
}

}  // namespace

PeriodicGraph make_1d_nn(std::span<const double> positions) {
  if (positions.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one position");
  std::vector<FiberVertex> fiber;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!(positions[i] >= 0.0 && positions[i] < 1.0))
      throw Error(ErrorCode::InvalidArgument, "positions must lie in [0,1)");
    if (i > 0 && !(positions[i] > positions[i - 1]))
      throw Error(ErrorCode::NonIncreasingPositions, "positions must be strictly increasing");
    fiber.push_back({"x" + std::to_string(i), {positions[i]}});
  }
  std::vector<EdgeOrbit> orbits;
  const int k = static_cast<int>(positions.size());
  for (int i = 0; i + 1 < k; ++i) orbits.push_back(weighted_orbit(fiber, i, i + 1, {0}));
  orbits.push_back(weighted_orbit(fiber, k - 1, 0, {1}));
  return PeriodicGraph(1, std::move(fiber), std::move(orbits), "1d-nn");
}

PeriodicGraph make_cubic(int dim, Neighborhood hood) {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::InvalidArgument, "cubic generator supports d in {1,2,3}");
  std::vector<FiberVertex> fiber{{"o", Vec(dim, 0.0)}};
  std::vector<EdgeOrbit> orbits;
  if (hood == Neighborhood::Axis) {
    for (int c = 0; c < dim; ++c) {
      Shift k(dim, 0);
      k[c] = 1;
      orbits.push_back(weighted_orbit(fiber, 0, 0, k));
    }
  } else {
    int total = 1;
    for (int c = 0; c < dim; ++c) total *= 3;
    for (int code = 0; code < total; ++code) {
      Shift k(dim);
      int rem = code;
      for (int c = dim - 1; c >= 0; --c) {
        k[c] = rem % 3 - 1;
        rem /= 3;
      }
      if (first_nonzero_positive(k)) orbits.push_back(weighted_orbit(fiber, 0, 0, k));
    }
  }
  std::ostringstream name;
  name << "cubic" << dim << (hood == Neighborhood::Axis ? "-axis" : "-linf");
  return PeriodicGraph(dim, std::move(fiber), std::move(orbits), name.str());
}

PeriodicGraph make_triangular() {
  std::vector<FiberVertex> fiber{{"o", {0.0, 0.0}}};
  std::vector<EdgeOrbit> orbits{weighted_orbit(fiber, 0, 0, {1, 0}),
                                weighted_orbit(fiber, 0, 0, {0, 1}),
                                weighted_orbit(fiber, 0, 0, {1, 1})};
  return PeriodicGraph(2, std::move(fiber), std::move(orbits), "triangular");
}

PeriodicGraph make_honeycomb() {
  std::vector<FiberVertex> fiber{{"a", {1.0 / 3.0, 1.0 / 3.0}}, {"b", {2.0 / 3.0, 2.0 / 3.0}}};
  std::vector<EdgeOrbit> orbits{weighted_orbit(fiber, 0, 1, {0, 0}),
                                weighted_orbit(fiber, 1, 0, {1, 0}),
                                weighted_orbit(fiber, 1, 0, {0, 1})};
  return PeriodicGraph(2, std::move(fiber), std::move(orbits), "honeycomb");
}

// -- rescaled graph --------------------------------------------------------

RescaledGraph::RescaledGraph(const PeriodicGraph& base, int cells_per_side)
    : base_(base), n_(cells_per_side), cell_count_(1) {
  if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "cells per side must be positive");
  if (!(2 * base_.range() < n_))
    throw Error(ErrorCode::EpsTooLarge, "eps * R0 must be < 1/2 (R0 = " +
                                            std::to_string(base_.range()) + ", N = " +
                                            std::to_string(n_) + ")");
  const int d = base_.dim();
  for (int c = 0; c < d; ++c) cell_count_ *= static_cast<std::size_t>(n_);
  const double eps = 1.0 / n_;
  adjacency_.resize(vertex_count());
  edges_.reserve(cell_count_ * base_.orbit_count());
  std::vector<int> head_cell(d);
  for (std::size_t cell = 0; cell < cell_count_; ++cell) {
    const auto z = cell_of(cell * base_.fiber_size());
    for (std::size_t i = 0; i < base_.orbit_count(); ++i) {
      const auto& o = base_.orbits()[i];
      for (int c = 0; c < d; ++c) head_cell[c] = z[c] + o.shift[c];
      TorusEdge e;
      e.tail = vertex(z, o.from);
      e.head = vertex(head_cell, o.to);
      e.orbit = i;
      e.cell = cell;
      e.alpha_forward = eps * o.alpha;
      e.alpha_backward = eps * o.alpha_reverse;
      e.alpha = 0.5 * (e.alpha_forward + e.alpha_backward);
      adjacency_[e.tail].emplace_back(edges_.size(), e.head);
      adjacency_[e.head].emplace_back(edges_.size(), e.tail);
      edges_.push_back(e);
    }
  }
}

std::size_t RescaledGraph::cell_index(std::span<const int> cell) const {
  std::size_t idx = 0;
  for (int c : cell) {
    const int wrapped = ((c % n_) + n_) % n_;
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(wrapped);
  }
  return idx;
}

std::size_t RescaledGraph::vertex(std::span<const int> cell, int fiber) const {
  return cell_index(cell) * base_.fiber_size() + static_cast<std::size_t>(fiber);
}

std::vector<int> RescaledGraph::cell_of(std::size_t v) const {
  std::size_t rem = v / base_.fiber_size();
  std::vector<int> z(base_.dim());
  for (int c = base_.dim() - 1; c >= 0; --c) {
    z[c] = static_cast<int>(rem % static_cast<std::size_t>(n_));
    rem /= static_cast<std::size_t>(n_);
  }
  return z;
}

Vec RescaledGraph::position(std::size_t v) const {
  const auto z = cell_of(v);
  const auto& pos = base_.fiber()[fiber_of(v)].pos;
  Vec p(base_.dim());
  for (int c = 0; c < base_.dim(); ++c) p[c] = (z[c] + pos[c]) / n_;
  return p;
}

RescaledGraph build_rescaled(const PeriodicGraph& g, int cells_per_side) {
  return RescaledGraph(g, cells_per_side);
}

Vec divergence(const RescaledGraph& rg, const EdgeFlux& flux) {
  if (flux.size() != rg.edges().size())
    throw Error(ErrorCode::InvalidArgument, "flux size does not match edge count");
  Vec div(rg.vertex_count(), 0.0);
  for (std::size_t e = 0; e < flux.size(); ++e) {
    div[rg.edges()[e].tail] += flux[e];
    div[rg.edges()[e].head] -= flux[e];
  }
  return div;
}

EdgeFlux lift_flux(const RescaledGraph& rg, const PeriodicFlux& flux) {
  const double scale = std::pow(rg.eps(), rg.dim() - 1);
  EdgeFlux out(rg.edges().size());
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = scale * flux[rg.edges()[e].orbit];
  return out;
}

PeriodicFlux pull_back(const RescaledGraph& rg, const EdgeFlux& flux, std::size_t cell) {
  const double scale = std::pow(rg.eps(), rg.dim() - 1);
  PeriodicFlux out(rg.base().orbit_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = flux[rg.edge_of(i, cell)] / scale;
  return out;
}

// -- measures --------------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0)
      throw Error(ErrorCode::InvalidArgument, "measure weights must be finite and nonnegative");
    total_ += w;
  }
}

DiscreteMeasure DiscreteMeasure::dirac(std::size_t size, std::size_t at, double mass) {
  std::vector<double> w(size, 0.0);
  w.at(at) = mass;
  return DiscreteMeasure(std::move(w));
}

std::vector<std::size_t> DiscreteMeasure::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > 0.0) s.push_back(i);
  return s;
}

}  // namespace homflow
