#include "homflow/convergence.hpp"

#include <cmath>
#include <sstream>

#include "homflow/ball_output.hpp"
#include "homflow/error.hpp"

namespace homflow {

std::string ConvergenceTable::to_csv() const {
  std::ostringstream out;
  out << "eps,value,limit,error,kr_defect\n";
  for (const auto& r : rows)
    out << format_number(r.eps) << ',' << format_number(r.value) << ',' << format_number(r.limit)
        << ',' << format_number(r.error) << ',' << format_number(r.kr_defect) << '\n';
  return out.str();
}

bool ConvergenceTable::errors_nonincreasing(double tol) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].error > rows[i - 1].error + tol) return false;
  return true;
}

int parse_eps(const std::string& text) {
  auto bad = [&]() -> int { throw Error(ErrorCode::InvalidArgument, "invalid eps '" + text + "'"); };
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      if (num != "1") return bad();
      const long n = std::stol(den, &used);
      if (used != den.size() || n < 1 || n > 1000000) return bad();
      return static_cast<int>(n);
    }
    const double eps = std::stod(text, &used);
    if (used != text.size() || !(eps > 0.0) || eps > 1.0) return bad();
    const double n = std::round(1.0 / eps);
    if (std::abs(n * eps - 1.0) > 1e-9) return bad();
    return static_cast<int>(n);
  } catch (const std::logic_error&) {
    return bad();
  }
}

int shift_radius(const CellProblem& cell) {
  // f(x) <= C |x|_2 with C from the axis values; f(x) >= c |x|_2. The shift
  // k = 0 costs at most C sqrt(d), and |q - p + k|_2 >= |k|_inf - 1.
  const int d = cell.graph().dim();
  double upper = 0.0;
  for (int a = 0; a < d; ++a) {
    Vec e(d, 0.0);
    e[a] = 1.0;
    const double f = cell.gauge(e);
    upper += f * f;
  }
  const double c = norm_lower_bound_constant(cell.graph());
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(upper) * std::sqrt(d) / c + 1.0)));
}

namespace {

void check_grid(const std::vector<int>& ns) {
  if (ns.empty()) throw Error(ErrorCode::InvalidArgument, "empty eps list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw Error(ErrorCode::InvalidArgument, "eps must be 1/N with N >= 1");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw Error(ErrorCode::InvalidArgument, "eps values must be strictly decreasing");
  }
}

Gauge gauge_of(const CellProblem& cell) {
  return [&cell](std::span<const double> x) { return cell.gauge(x); };
}

}  // namespace

ConvergenceTable converge_dirac(const CellProblem& cell, const Vec& p, const Vec& q,
                                const std::vector<int>& cells_per_side) {
  check_grid(cells_per_side);
  const int d = cell.graph().dim();
  if (static_cast<int>(p.size()) != d || static_cast<int>(q.size()) != d)
    throw Error(ErrorCode::InvalidArgument, "endpoints have the wrong dimension");
  ConvergenceTable table;
  table.graph = cell.graph().name();
  table.mode = "dirac";
  const double limit = torus_fhom_distance(gauge_of(cell), p, q, shift_radius(cell));
  for (int n : cells_per_side) {
    const RescaledGraph rg(cell.graph(), n);
    const std::size_t x = snap_to_vertex(rg, p);
    const std::size_t y = snap_to_vertex(rg, q);
    ConvergenceRow row;
    row.eps = rg.eps();
    row.value = graph_distance(rg, x, y).value;
    row.limit = limit;
    row.error = std::abs(row.value - limit);
    row.kr_defect = torus_euclidean_distance(p, rg.position(x)) + torus_euclidean_distance(q, rg.position(y));
    table.rows.push_back(row);
  }
  return table;
}

ConvergenceTable converge_measures(const CellProblem& cell, const std::vector<WeightedPoint>& mu,
                                   const std::vector<WeightedPoint>& nu,
                                   const std::vector<int>& cells_per_side) {
  check_grid(cells_per_side);
  ConvergenceTable table;
  table.graph = cell.graph().name();
  table.mode = "measure";
  const Gauge gauge = gauge_of(cell);
  const int radius = shift_radius(cell);
  const double limit = point_set_w1(mu, nu, [&](std::span<const double> a, std::span<const double> b) {
    return torus_fhom_distance(gauge, a, b, radius);
  });
  for (int n : cells_per_side) {
    const RescaledGraph rg(cell.graph(), n);
    const auto m0 = embed_points(rg, mu);
    const auto m1 = embed_points(rg, nu);
    ConvergenceRow row;
    row.eps = rg.eps();
    row.value = ma_static(rg, m0, m1).value;
    row.limit = limit;
    row.error = std::abs(row.value - limit);
    row.kr_defect = kr_distance(mu, as_points(rg, m0)) + kr_distance(nu, as_points(rg, m1));
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace homflow
