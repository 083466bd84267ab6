#pragma once

// Z^d-periodic graphs described by their unit cell, periodic fluxes on them,
// and the finite torus graphs obtained by rescaling with eps = 1/N.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace homflow {

using Vec = std::vector<double>;
using Shift = std::vector<int>;

struct FiberVertex {
  std::string id;
  Vec pos;  // embedded position in [0,1)^d
};

/// The periodic edge family {((z, from), (z + shift, to)) : z in Z^d}.
/// `alpha` weighs the stored orientation, `alpha_reverse` the opposite one.
struct EdgeOrbit {
  int from = 0;
  int to = 0;
  Shift shift;
  double alpha = 0.0;
  double alpha_reverse = 0.0;
};

/// An orbit looked up by one of its two orientations.
struct OrbitRef {
  std::size_t index = 0;
  bool reversed = false;
};

/// One element of E^Q: an oriented edge whose tail lies in the unit cell.
struct OrientedEdge {
  std::size_t orbit = 0;
  bool reversed = false;
  int from = 0;
  int to = 0;
  Shift shift;
  double alpha = 0.0;
  Vec displacement;  // y - x in embedded coordinates
};

class PeriodicGraph {
 public:
  /// Orbits are canonicalized on construction: the stored orientation has
  /// (from, to) lexicographically smallest and, for loops, a shift whose
  /// first nonzero entry is positive. Throws Error(InvalidGraph) on
  /// structural defects (bad indices, dimension mismatch, duplicate orbits,
  /// zero-shift loops, positions outside [0,1)^d).
  PeriodicGraph(int dim, std::vector<FiberVertex> fiber, std::vector<EdgeOrbit> orbits,
                std::string name = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  std::size_t fiber_size() const { return fiber_.size(); }
  const std::vector<FiberVertex>& fiber() const { return fiber_; }
  const std::vector<EdgeOrbit>& orbits() const { return orbits_; }
  std::size_t orbit_count() const { return orbits_.size(); }

  /// R0: the largest sup-norm of an orbit shift.
  int range() const { return range_; }

  /// shift + pos(to) - pos(from) for the stored orientation.
  const Vec& displacement(std::size_t orbit) const { return displacements_[orbit]; }

  /// alpha + alpha_reverse: the cell cost of a unit flux on the orbit, since
  /// both orientations belong to E^Q.
  double orbit_cost(std::size_t orbit) const {
    return orbits_[orbit].alpha + orbits_[orbit].alpha_reverse;
  }

  std::optional<std::size_t> find_fiber(const std::string& id) const;
  std::optional<OrbitRef> find_orbit(int from, int to, std::span<const int> shift) const;

  /// E^Q, both orientations of every orbit, in orbit order.
  std::vector<OrientedEdge> oriented_edges() const;

 private:
  int dim_;
  std::string name_;
  std::vector<FiberVertex> fiber_;
  std::vector<EdgeOrbit> orbits_;
  std::vector<Vec> displacements_;
  int range_ = 0;
};

/// Z^d-periodic antisymmetric flux, one value per orbit in the stored
/// orientation. Reading the reversed orientation negates the value.
class PeriodicFlux {
 public:
  PeriodicFlux() = default;
  explicit PeriodicFlux(std::size_t orbit_count) : values_(orbit_count, 0.0) {}
  explicit PeriodicFlux(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t orbit) const { return values_[orbit]; }
  double& operator[](std::size_t orbit) { return values_[orbit]; }
  double at(OrbitRef ref) const { return ref.reversed ? -values_[ref.index] : values_[ref.index]; }
  const std::vector<double>& values() const { return values_; }

  /// Adds `value` to J(x, y) for the edge (from, to, shift); the reverse
  /// edge receives -value. Throws InvalidArgument if no such orbit exists.
  void add(const PeriodicGraph& g, int from, int to, std::span<const int> shift, double value);

 private:
  std::vector<double> values_;
};

struct ValidationReport {
  bool symmetric = false;         // every oriented edge has its reverse
  bool has_edges = false;
  bool positive_weights = false;
  bool cover_connected = false;   // connectivity on the (2 R0 + 1)^d box
  bool lattice_connected = false; // quotient connected and cycle shifts span Z^d
  int range = 0;
  std::vector<int> degrees;       // per fiber vertex
  std::vector<std::string> failures;

  bool ok() const {
    return symmetric && has_edges && positive_weights && cover_connected && lattice_connected;
  }
};

ValidationReport validate_graph(const PeriodicGraph& g);

/// div J(v) = sum over E^Q edges leaving (0, v), on the unit cell.
Vec divergence(const PeriodicGraph& g, const PeriodicFlux& flux);

/// Eff(J) = 1/2 sum_{E^Q} J(x, y) (y - x) with embedded displacements.
Vec effective_flux(const PeriodicGraph& g, const PeriodicFlux& flux);

/// F(J) = sum_{E^Q} alpha_xy |J(x, y)|.
double cell_energy(const PeriodicGraph& g, const PeriodicFlux& flux);

// -- generators ------------------------------------------------------------

enum class Neighborhood { Axis, Linf };

/// alpha = 1/2 |displacement|_2, the weight attached when none is given.
double default_alpha(std::span<const double> displacement);

/// 1D nearest-neighbour chain through the given fiber positions.
/// Throws NonIncreasingPositions / InvalidArgument.
PeriodicGraph make_1d_nn(std::span<const double> positions);

/// Z^d with |x - y|_1 = 1 (Axis) or |x - y|_inf = 1 (Linf) edges, d in {1,2,3}.
PeriodicGraph make_cubic(int dim, Neighborhood hood);

/// Z^2 with edges e1, e2, e1 + e2 (six neighbours per vertex).
PeriodicGraph make_triangular();

/// Two-fiber honeycomb embedded in the unit square.
PeriodicGraph make_honeycomb();

// -- rescaled torus graph -------------------------------------------------

/// One unordered edge of the torus graph, stored as tail -> head.
struct TorusEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  std::size_t orbit = 0;
  std::size_t cell = 0;        // index of the cell z the tail lives in
  double alpha_forward = 0.0;  // eps * alpha of the tail -> head orientation
  double alpha_backward = 0.0; // eps * alpha of the head -> tail orientation
  double alpha = 0.0;          // symmetrized weight (forward + backward) / 2
};

/// Flux on a torus graph, one value per TorusEdge in tail -> head orientation.
using EdgeFlux = std::vector<double>;

class RescaledGraph {
 public:
  /// eps = 1/cells_per_side. Throws EpsTooLarge unless eps * R0 < 1/2.
  RescaledGraph(const PeriodicGraph& base, int cells_per_side);

  const PeriodicGraph& base() const { return base_; }
  int cells_per_side() const { return n_; }
  double eps() const { return 1.0 / n_; }
  int dim() const { return base_.dim(); }
  std::size_t cell_count() const { return cell_count_; }
  std::size_t vertex_count() const { return cell_count_ * base_.fiber_size(); }
  const std::vector<TorusEdge>& edges() const { return edges_; }

  /// T_eps: the torus vertex of (cell, fiber), cell coordinates taken mod N.
  std::size_t vertex(std::span<const int> cell, int fiber) const;
  std::size_t cell_index(std::span<const int> cell) const;
  std::vector<int> cell_of(std::size_t vertex) const;
  int fiber_of(std::size_t vertex) const {
    return static_cast<int>(vertex % base_.fiber_size());
  }
  /// eps (z + pos(v)) in [0,1)^d.
  Vec position(std::size_t vertex) const;

  /// Incident (edge index, neighbour) pairs per vertex.
  const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adjacency() const {
    return adjacency_;
  }

  /// Index of the torus edge realizing orbit `orbit` with tail in `cell`.
  std::size_t edge_of(std::size_t orbit, std::size_t cell) const {
    return cell * base_.orbit_count() + orbit;
  }

 private:
  PeriodicGraph base_;
  int n_;
  std::size_t cell_count_;
  std::vector<TorusEdge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

RescaledGraph build_rescaled(const PeriodicGraph& g, int cells_per_side);

/// div J(x) = sum_{y ~ x} J(x, y) on the torus.
Vec divergence(const RescaledGraph& rg, const EdgeFlux& flux);

/// The flux with tau^z J_eps / eps^(d-1) = J in every cell z.
EdgeFlux lift_flux(const RescaledGraph& rg, const PeriodicFlux& flux);

/// tau^z J_eps / eps^(d-1) on the unit-cell orbits; inverts lift_flux.
PeriodicFlux pull_back(const RescaledGraph& rg, const EdgeFlux& flux, std::size_t cell);

// -- measures --------------------------------------------------------------

class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Throws InvalidArgument on negative or non-finite weights.
  explicit DiscreteMeasure(std::vector<double> weights);

  static DiscreteMeasure dirac(std::size_t size, std::size_t at, double mass = 1.0);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_; }
  std::vector<std::size_t> support() const;

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

}  // namespace homflow
