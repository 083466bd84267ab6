#pragma once

// Successive shortest paths with node potentials for transshipment problems
// with real supplies and nonnegative arc costs.

#include <cstddef>
#include <vector>

#include "homflow/lp.hpp"

namespace homflow {

struct FlowArc {
  std::size_t tail = 0;
  std::size_t head = 0;
  double cost = 0.0;
  double capacity = kInf;
};

struct FlowNetwork {
  std::vector<double> supply;  // positive: source, negative: sink
  std::vector<FlowArc> arcs;

  std::size_t node_count() const { return supply.size(); }
  /// Throws InvalidArgument on negative costs, non-positive capacities or
  /// supplies that do not balance within 1e-10.
  void check() const;
};

struct FlowSolution {
  std::vector<double> flow;       // per arc
  double cost = 0.0;
  /// Reduced cost of arc a is cost + potential[tail] - potential[head]; it is
  /// nonnegative on residual arcs and zero on arcs carrying flow.
  std::vector<double> potential;
  std::size_t augmentations = 0;
};

/// Throws Error(InfeasibleSupply) when some excess cannot reach a deficit.
FlowSolution solve_min_cost_flow(const FlowNetwork& net);

/// The same problem as an LP: one variable per arc, one equality row per
/// node (outflow - inflow = supply).
LinearProgram to_linear_program(const FlowNetwork& net);

}  // namespace homflow
