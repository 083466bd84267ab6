#pragma once

// eps-indexed tables comparing discrete transport costs on rescaled torus
// graphs with their homogenized limits.

#include <string>
#include <vector>

#include "homflow/cell_problem.hpp"
#include "homflow/transport.hpp"

namespace homflow {

struct ConvergenceRow {
  double eps = 0.0;
  double value = 0.0;
  double limit = 0.0;
  double error = 0.0;      // |value - limit|
  double kr_defect = 0.0;  // KR distance between the inputs and their discretization
};

struct ConvergenceTable {
  std::string graph;
  std::string mode;  // "dirac" or "measure"
  std::vector<ConvergenceRow> rows;

  /// Header eps,value,limit,error,kr_defect.
  std::string to_csv() const;
  bool errors_nonincreasing(double tol = 1e-12) const;
};

/// Parses "1/8" or "0.125" into N = 8. Throws InvalidArgument unless 1/eps
/// is a positive integer.
int parse_eps(const std::string& text);

/// Shift radius guaranteeing that torus_fhom_distance attains its minimum.
int shift_radius(const CellProblem& cell);

/// For each N (strictly increasing): d_eps between the vertices nearest to
/// p and q against the torus f_hom distance of p and q.
ConvergenceTable converge_dirac(const CellProblem& cell, const Vec& p, const Vec& q,
                                const std::vector<int>& cells_per_side);

/// For each N: MA_eps of the embedded point sets against W1 of the point
/// sets for the torus f_hom metric.
ConvergenceTable converge_measures(const CellProblem& cell, const std::vector<WeightedPoint>& mu,
                                   const std::vector<WeightedPoint>& nu,
                                   const std::vector<int>& cells_per_side);

}  // namespace homflow
