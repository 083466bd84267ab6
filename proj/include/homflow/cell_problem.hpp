#pragma once

// The homogenized density f_hom(j) = min { F(J) : J periodic, div J = 0,
// Eff(J) = j } and the support function of its unit ball, both as LPs over
// one signed flux value per edge orbit.

#include <span>

#include "homflow/lp.hpp"
#include "homflow/periodic_graph.hpp"

namespace homflow {

struct CellSolution {
  double value = 0.0;  // f_hom(j) = F(flux)
  PeriodicFlux flux;
  Vec direction;
  double divergence_residual = 0.0;  // over all |V| rows
  double eff_residual = 0.0;         // |Eff(flux) - j|_2
  /// Multipliers of the Eff rows. Every J in Rep(j) has F(J) >= <dual, j>,
  /// with equality at the optimum.
  Vec dual;
  double duality_gap = 0.0;
};

struct RepCheck {
  bool feasible = false;
  double divergence_residual = 0.0;
  double eff_residual = 0.0;
};

struct SupportValue {
  double value = 0.0;  // h_B(u)
  PeriodicFlux flux;   // maximizer with F(flux) <= 1
  Vec point;           // Eff(flux), a point of the unit ball boundary
  double duality_gap = 0.0;
};

/// Validates the graph once; every query reuses it.
class CellProblem {
 public:
  /// Throws Error(InvalidGraph) when validate_graph fails.
  explicit CellProblem(PeriodicGraph graph, SimplexOptions options = {});

  const PeriodicGraph& graph() const { return graph_; }

  CellSolution f_hom(std::span<const double> j) const;
  SupportValue support(std::span<const double> u) const;
  double gauge(std::span<const double> j) const { return f_hom(j).value; }

 private:
  LinearProgram build(std::span<const double> target, bool support_mode) const;

  PeriodicGraph graph_;
  SimplexOptions options_;
};

CellSolution f_hom(const PeriodicGraph& g, std::span<const double> j);
SupportValue support_function(const PeriodicGraph& g, std::span<const double> u);

/// div J = 0 and Eff(J) = j, each within `tol`.
RepCheck rep_feasible(const PeriodicGraph& g, const PeriodicFlux& flux,
                      std::span<const double> j, double tol = 1e-9);

/// c = 2 / max_{E^Q} |y - x|_2 / alpha_xy, so that f_hom(j) >= c |j|_2.
double norm_lower_bound_constant(const PeriodicGraph& g);

}  // namespace homflow
