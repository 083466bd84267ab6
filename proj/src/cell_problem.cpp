#include "homflow/cell_problem.hpp"

#include <algorithm>
#include <cmath>

#include "homflow/error.hpp"

namespace homflow {
namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

CellProblem::CellProblem(PeriodicGraph graph, SimplexOptions options)
    : graph_(std::move(graph)), options_(options) {
  const auto report = validate_graph(graph_);
  if (!report.ok()) {
    std::string msg = "graph '" + graph_.name() + "' failed validation:";
    for (const auto& f : report.failures) msg += " " + f + ";";
    throw Error(ErrorCode::InvalidGraph, msg);
  }
}

// Variables: J_i = p_i - q_i with p_i, q_i >= 0, both priced at the orbit
// cost. One divergence row is dropped since the rows sum to zero.
LinearProgram CellProblem::build(std::span<const double> target, bool support_mode) const {
  const auto& g = graph_;
  const std::size_t m = g.orbit_count();
  LinearProgram lp;
  for (std::size_t i = 0; i < m; ++i) {
    if (support_mode) {
      double gain = 0.0;
      for (int c = 0; c < g.dim(); ++c) gain += target[c] * g.displacement(i)[c];
      lp.add_variable(-gain);
      lp.add_variable(gain);
    } else {
      lp.add_variable(g.orbit_cost(i));
      lp.add_variable(g.orbit_cost(i));
    }
  }
  std::vector<std::vector<LpTerm>> div_rows(g.fiber_size());
  for (std::size_t i = 0; i < m; ++i) {
    const auto& o = g.orbits()[i];
    if (o.from == o.to) continue;
    div_rows[o.from].push_back({2 * i, 1.0});
    div_rows[o.from].push_back({2 * i + 1, -1.0});
    div_rows[o.to].push_back({2 * i, -1.0});
    div_rows[o.to].push_back({2 * i + 1, 1.0});
  }
  for (std::size_t v = 0; v + 1 < g.fiber_size(); ++v)
    lp.add_row(std::move(div_rows[v]), RowSense::Equal, 0.0);
  if (support_mode) {
    std::vector<LpTerm> budget;
    for (std::size_t i = 0; i < m; ++i) {
      budget.push_back({2 * i, g.orbit_cost(i)});
      budget.push_back({2 * i + 1, g.orbit_cost(i)});
    }
    lp.add_row(std::move(budget), RowSense::LessEqual, 1.0);
  } else {
    for (int c = 0; c < g.dim(); ++c) {
      std::vector<LpTerm> row;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = g.displacement(i)[c];
        if (d == 0.0) continue;
        row.push_back({2 * i, d});
        row.push_back({2 * i + 1, -d});
      }
      lp.add_row(std::move(row), RowSense::Equal, target[c]);
    }
  }
  return lp;
}

CellSolution CellProblem::f_hom(std::span<const double> j) const {
  if (static_cast<int>(j.size()) != graph_.dim())
    throw Error(ErrorCode::InvalidArgument, "direction has wrong dimension");
  const auto lp = build(j, false);
  const auto sol = solve_lp(lp, options_);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorCode::InternalConsistency,
                std::string("cell problem reported ") + to_string(sol.status) +
                    " on a validated graph");
  CellSolution out;
  out.direction.assign(j.begin(), j.end());
  out.flux = PeriodicFlux(graph_.orbit_count());
  for (std::size_t i = 0; i < graph_.orbit_count(); ++i)
    out.flux[i] = sol.x[2 * i] - sol.x[2 * i + 1];
  out.value = cell_energy(graph_, out.flux);
  const auto check = rep_feasible(graph_, out.flux, j);
  out.divergence_residual = check.divergence_residual;
  out.eff_residual = check.eff_residual;
  const std::size_t first_eff_row = graph_.fiber_size() - 1;
  out.dual.assign(sol.duals.begin() + static_cast<long>(first_eff_row), sol.duals.end());
  out.duality_gap = sol.duality_gap;
  return out;
}

SupportValue CellProblem::support(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != graph_.dim())
    throw Error(ErrorCode::InvalidArgument, "direction has wrong dimension");
  const auto lp = build(u, true);
  const auto sol = solve_lp(lp, options_);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorCode::InternalConsistency,
                std::string("support problem reported ") + to_string(sol.status));
  SupportValue out;
  out.flux = PeriodicFlux(graph_.orbit_count());
  for (std::size_t i = 0; i < graph_.orbit_count(); ++i)
    out.flux[i] = sol.x[2 * i] - sol.x[2 * i + 1];
  out.point = effective_flux(graph_, out.flux);
  out.value = 0.0;
  for (int c = 0; c < graph_.dim(); ++c) out.value += u[c] * out.point[c];
  out.duality_gap = sol.duality_gap;
  return out;
}

CellSolution f_hom(const PeriodicGraph& g, std::span<const double> j) {
  return CellProblem(g).f_hom(j);
}

SupportValue support_function(const PeriodicGraph& g, std::span<const double> u) {
  return CellProblem(g).support(u);
}

RepCheck rep_feasible(const PeriodicGraph& g, const PeriodicFlux& flux,
                      std::span<const double> j, double tol) {
  RepCheck out;
  for (double d : divergence(g, flux))
    out.divergence_residual = std::max(out.divergence_residual, std::abs(d));
  auto eff = effective_flux(g, flux);
  for (int c = 0; c < g.dim(); ++c) eff[c] -= j[c];
  out.eff_residual = norm2(eff);
  out.feasible = out.divergence_residual <= tol && out.eff_residual <= tol;
  return out;
}

double norm_lower_bound_constant(const PeriodicGraph& g) {
  double worst = 0.0;
  for (const auto& e : g.oriented_edges()) worst = std::max(worst, norm2(e.displacement) / e.alpha);
  return 2.0 / worst;
}

}  // namespace homflow
