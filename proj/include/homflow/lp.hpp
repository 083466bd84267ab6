#pragma once

// Dense two-phase primal simplex with Bland's rule. Sized for the cell and
// transport problems in this library (a few hundred rows and columns).

#include <cstddef>
#include <limits>
#include <vector>

#include "homflow/parallel.hpp"

namespace homflow {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { Equal, LessEqual, GreaterEqual };

struct LpTerm {
  std::size_t var;
  double coef;
};

struct LpRow {
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::Equal;
  double rhs = 0.0;
};

/// min c^T x  s.t.  row_i(x) (sense_i) b_i,  lower <= x <= upper.
class LinearProgram {
 public:
  std::size_t add_variable(double cost, double lower = 0.0, double upper = kInf);
  std::size_t add_row(std::vector<LpTerm> terms, RowSense sense, double rhs);

  std::size_t variable_count() const { return cost_.size(); }
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<double>& costs() const { return cost_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<LpRow>& rows() const { return rows_; }

  /// Throws InvalidArgument on non-finite data, bad indices, or lower > upper.
  void check_well_formed() const;

 private:
  std::vector<double> cost_, lower_, upper_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// Row multipliers: >= rows carry y >= 0, <= rows y <= 0 (minimization).
  std::vector<double> duals;
  std::vector<double> reduced_costs;  // c - A^T y
  double dual_objective = 0.0;        // Lagrangian bound at `duals`
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  std::vector<double> ray;     // Unbounded: feasible direction, c^T ray < 0
  std::vector<double> farkas;  // Infeasible: see farkas_margin
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-12;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  std::size_t max_iterations = 0;  // 0: 50 * (rows + columns)
  Execution exec = Execution::Serial;
};

/// Deterministic given the input ordering. Throws Error(NumericalBreakdown)
/// when pivoting stalls or the final basis fails its residual check.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

/// Largest violation of any row or bound by x.
double primal_residual(const LinearProgram& lp, const std::vector<double>& x);

/// b^T y - max_{lower <= x <= upper} (A^T y)^T x. A positive value, with y
/// sign-feasible, proves that no x satisfies the rows and bounds. Returns
/// -inf when y has the wrong sign on some inequality row.
double farkas_margin(const LinearProgram& lp, const std::vector<double>& y);

/// min_{lower <= x <= upper} c^T x + y^T (b - A x): a lower bound on the
/// optimum for sign-feasible y, -inf otherwise.
double lagrangian_bound(const LinearProgram& lp, const std::vector<double>& y,
                        double tol = 1e-9);

}  // namespace homflow
