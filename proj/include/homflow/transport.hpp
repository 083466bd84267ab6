#pragma once

// Transport problems on a rescaled torus graph: the static flux problem
// (min-cost flow), the Kantorovich coupling and dual LPs for the induced
// W1 distance, the graph distance d_eps, time-averaging of dynamic curves,
// and torus utilities used by the convergence experiments.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "homflow/parallel.hpp"
#include "homflow/periodic_graph.hpp"
#include "homflow/shortest_path.hpp"

namespace homflow {

enum class SolverTag { Flow, Coupling, Dual };

const char* to_string(SolverTag tag);

struct CouplingEntry {
  std::size_t from = 0;
  std::size_t to = 0;
  double mass = 0.0;
};

struct TransportResult {
  SolverTag solver = SolverTag::Flow;
  double value = 0.0;
  EdgeFlux flux;                        // Flow
  std::vector<CouplingEntry> coupling;  // Coupling
  Vec potential;                        // Dual
  /// Flow: max |div J - (m0 - m1)|. Coupling: max marginal defect.
  /// Dual: max edge Lipschitz violation.
  double residual = 0.0;
  double duality_gap = 0.0;  // LP-backed solvers only
};

/// F_eps(J) = sum over oriented pairs of alpha_eps |J|, i.e. 2 alpha_eps |J_e|
/// per stored edge.
double discrete_energy(const RescaledGraph& rg, const EdgeFlux& flux);

/// Per-edge cost 2 alpha_eps used by d_eps and by the flow reduction.
std::vector<double> edge_lengths(const RescaledGraph& rg);

struct PathResult {
  double value = 0.0;
  std::vector<std::size_t> path;
};

/// d_eps(x, y) with a shortest path realizing it.
PathResult graph_distance(const RescaledGraph& rg, std::size_t x, std::size_t y);

/// d_eps from each source to every vertex; rows follow `sources`.
std::vector<std::vector<double>> distances_from(const RescaledGraph& rg,
                                                std::span<const std::size_t> sources,
                                                Execution exec = Execution::Parallel);

/// min F_eps(J) s.t. div J = m0 - m1, solved as a min-cost flow with two
/// opposite arcs of cost 2 alpha_eps per edge. Throws MassMismatch.
TransportResult ma_static(const RescaledGraph& rg, const DiscreteMeasure& m0,
                          const DiscreteMeasure& m1);

/// min sum d_eps(x, y) pi(x, y) over couplings, as a transportation LP on
/// supp(m0) x supp(m1). Throws MassMismatch.
TransportResult w1_coupling(const RescaledGraph& rg, const DiscreteMeasure& m0,
                            const DiscreteMeasure& m1, Execution exec = Execution::Parallel);

/// max sum phi (m0 - m1) s.t. |phi(y) - phi(x)| <= 2 alpha_eps on every
/// edge, as an LP. Throws MassMismatch.
TransportResult w1_dual(const RescaledGraph& rg, const DiscreteMeasure& m0,
                        const DiscreteMeasure& m1);

struct EdgeViolation {
  std::size_t edge = 0;
  double distance = 0.0;   // d_eps(tail, head)
  double edge_cost = 0.0;  // 2 alpha_eps
};

/// Edges carrying flux above `flux_tol` whose endpoints are closer in d_eps
/// than the edge cost. Empty for optimal fluxes.
std::vector<EdgeViolation> support_edge_check(const RescaledGraph& rg, const EdgeFlux& flux,
                                              double flux_tol = 1e-9, double tol = 1e-8);

/// Piecewise-linear masses on `times`, piecewise-constant fluxes between them.
struct DynamicCurve {
  std::vector<double> times;
  std::vector<DiscreteMeasure> masses;
  std::vector<EdgeFlux> fluxes;
};

/// max over intervals and vertices of |(m_{k+1} - m_k) / dt + div J_k|.
double continuity_residual(const RescaledGraph& rg, const DynamicCurve& curve);

struct Contraction {
  DiscreteMeasure start;
  DiscreteMeasure end;
  EdgeFlux flux;  // time average of the interval fluxes
  double energy_before = 0.0;  // sum dt_k F_eps(J_k)
  double energy_after = 0.0;   // F_eps(averaged flux)
  double divergence_residual = 0.0;

  /// The affine interpolation m0 + t (m1 - m0).
  DiscreteMeasure mass_at(double t) const;
};

/// Throws InvalidCurve when the time grid, the continuity equation (1e-9)
/// or mass conservation (1e-10) fails.
Contraction contract_dynamic(const RescaledGraph& rg, const DynamicCurve& curve);

// -- torus utilities -------------------------------------------------------

struct WeightedPoint {
  Vec pos;
  double weight = 0.0;
};

using Gauge = std::function<double(std::span<const double>)>;

/// min over integer shifts k with |k|_inf <= shift_radius of gauge(q - p + k).
double torus_fhom_distance(const Gauge& gauge, std::span<const double> p,
                           std::span<const double> q, int shift_radius = 1);

double torus_euclidean_distance(std::span<const double> p, std::span<const double> q);

/// W1 between weighted point sets for an arbitrary ground cost, via
/// min-cost flow on the bipartite support graph. Throws MassMismatch.
double point_set_w1(const std::vector<WeightedPoint>& mu, const std::vector<WeightedPoint>& nu,
                    const std::function<double(std::span<const double>, std::span<const double>)>& cost);

/// Kantorovich-Rubinstein distance on the flat torus, computed as W1 with
/// the Euclidean torus metric.
double kr_distance(const std::vector<WeightedPoint>& mu, const std::vector<WeightedPoint>& nu);

/// Each point's mass goes to the fiber-0 vertex of the eps-cube containing it.
DiscreteMeasure embed_points(const RescaledGraph& rg, const std::vector<WeightedPoint>& points);

/// Nearest vertex in Euclidean torus distance; ties go to the lower index.
std::size_t snap_to_vertex(const RescaledGraph& rg, std::span<const double> p);

/// The torus positions of a measure's atoms.
std::vector<WeightedPoint> as_points(const RescaledGraph& rg, const DiscreteMeasure& m);

}  // namespace homflow
