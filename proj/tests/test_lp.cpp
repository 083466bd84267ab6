#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "homflow/error.hpp"
#include "homflow/lp.hpp"

namespace homflow {
namespace {

void expect_certified(const LinearProgram& lp, const LpSolution& s) {
  ASSERT_EQ(s.status, LpStatus::Optimal);
  double bmax = 0.0;
  for (const auto& r : lp.rows()) bmax = std::max(bmax, std::abs(r.rhs));
  EXPECT_LE(primal_residual(lp, s.x), 1e-9 * (1.0 + bmax));
  EXPECT_LE(s.duality_gap, 1e-8 * (1.0 + std::abs(s.objective)));
  EXPECT_NEAR(lagrangian_bound(lp, s.duals), s.objective, 1e-8 * (1.0 + std::abs(s.objective)));
}

TEST(Simplex, LowerBoundRow) {
  LinearProgram lp;
  lp.add_variable(1.0, -kInf, kInf);
  lp.add_row({{0, 1.0}}, RowSense::GreaterEqual, 3.0);
  const auto s = solve_lp(lp);
  expect_certified(lp, s);
  EXPECT_NEAR(s.x[0], 3.0, 1e-12);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
}

TEST(Simplex, ContradictoryEqualitiesAreInfeasible) {
  LinearProgram lp;
  lp.add_variable(0.0, -kInf, kInf);
  lp.add_row({{0, 1.0}}, RowSense::Equal, 1.0);
  lp.add_row({{0, 1.0}}, RowSense::Equal, 2.0);
  const auto s = solve_lp(lp);
  EXPECT_EQ(s.status, LpStatus::Infeasible);
  EXPECT_GT(farkas_margin(lp, s.farkas), 1e-9);
}

TEST(Simplex, FreeDescentIsUnbounded) {
  LinearProgram lp;
  lp.add_variable(-1.0, -kInf, kInf);
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Unbounded);
  ASSERT_EQ(s.ray.size(), 1u);
  EXPECT_LT(-s.ray[0], 0.0);
}

TEST(Simplex, UnboundedRayRespectsRows) {
  // min -x - y, x - y <= 1, x, y >= 0.
  LinearProgram lp;
  lp.add_variable(-1.0);
  lp.add_variable(-1.0);
  lp.add_row({{0, 1.0}, {1, -1.0}}, RowSense::LessEqual, 1.0);
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Unbounded);
  EXPECT_LT(-s.ray[0] - s.ray[1], 0.0);
  EXPECT_LE(s.ray[0] - s.ray[1], 1e-12);
  EXPECT_GE(s.ray[0], -1e-12);
  EXPECT_GE(s.ray[1], -1e-12);
}

TEST(Simplex, InfeasibleBoxCertificate) {
  // x + y >= 3 with 0 <= x, y <= 1.
  LinearProgram lp;
  lp.add_variable(1.0, 0.0, 1.0);
  lp.add_variable(1.0, 0.0, 1.0);
  lp.add_row({{0, 1.0}, {1, 1.0}}, RowSense::GreaterEqual, 3.0);
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Infeasible);
  EXPECT_GT(farkas_margin(lp, s.farkas), 1e-9);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  LinearProgram lp;
  for (double c : {-0.75, 20.0, -0.5, 6.0}) lp.add_variable(c);
  lp.add_row({{0, 0.25}, {1, -8.0}, {2, -1.0}, {3, 9.0}}, RowSense::LessEqual, 0.0);
  lp.add_row({{0, 0.5}, {1, -12.0}, {2, -0.5}, {3, 3.0}}, RowSense::LessEqual, 0.0);
  lp.add_row({{2, 1.0}}, RowSense::LessEqual, 1.0);
  const auto s = solve_lp(lp);
  expect_certified(lp, s);
  EXPECT_NEAR(s.objective, -1.25, 1e-12);
}

TEST(Simplex, RejectsMalformedPrograms) {
  LinearProgram lp;
  lp.add_variable(1.0, 2.0, 1.0);
  EXPECT_THROW(solve_lp(lp), Error);
  LinearProgram bad_index;
  bad_index.add_variable(1.0);
  bad_index.add_row({{3, 1.0}}, RowSense::Equal, 1.0);
  EXPECT_THROW(solve_lp(bad_index), Error);
  LinearProgram nan;
  nan.add_variable(std::nan(""));
  EXPECT_THROW(solve_lp(nan), Error);
}

// Oracle: enumerate every choice of n active constraints among rows and
// bounds, solve the square system, keep feasible points.
double vertex_enumeration(const LinearProgram& lp, bool& feasible) {
  const std::size_t n = lp.variable_count();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& r : lp.rows()) {
    Plane p{std::vector<double>(n, 0.0), r.rhs};
    for (const auto& t : r.terms) p.a[t.var] += t.coef;
    planes.push_back(p);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (double bound : {lp.lower()[j], lp.upper()[j]}) {
      if (!std::isfinite(bound)) continue;
      Plane p{std::vector<double>(n, 0.0), bound};
      p.a[j] = 1.0;
      planes.push_back(p);
    }
  }
  feasible = false;
  double best = kInf;
  const std::size_t k = planes.size();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = planes[pick[i]].a[j];
        m[i][n] = planes[pick[i]].b;
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c; r < n; ++r)
          if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) < 1e-10) return;
        std::swap(m[c], m[piv]);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == c) continue;
          const double f = m[r][c] / m[c][c];
          for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
        }
      }
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
      if (primal_residual(lp, x) > 1e-9) return;
      feasible = true;
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.costs()[j] * x[j];
      best = std::min(best, obj);
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

TEST(Simplex, MatchesVertexEnumerationOnRandomBoxedPrograms) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> sense(0, 2);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    const int n = 2 + trial % 2;
    for (int j = 0; j < n; ++j) {
      const double lo = std::round(coef(rng));
      lp.add_variable(coef(rng), lo, lo + 1.0 + std::abs(std::round(coef(rng))));
    }
    const int m = 1 + trial % 3;
    for (int i = 0; i < m; ++i) {
      std::vector<LpTerm> row;
      for (int j = 0; j < n; ++j) row.push_back({static_cast<std::size_t>(j), coef(rng)});
      lp.add_row(std::move(row), static_cast<RowSense>(sense(rng)), coef(rng));
    }
    bool feasible = false;
    const double oracle = vertex_enumeration(lp, feasible);
    const auto s = solve_lp(lp);
    if (feasible) {
      expect_certified(lp, s);
      EXPECT_NEAR(s.objective, oracle, 1e-8) << "trial " << trial;
      ++optimal;
    } else {
      EXPECT_EQ(s.status, LpStatus::Infeasible) << "trial " << trial;
      if (s.status == LpStatus::Infeasible) { EXPECT_GT(farkas_margin(lp, s.farkas), 0.0); }
      ++infeasible;
    }
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 5);
}

TEST(Simplex, Deterministic) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> coef(0.1, 2.0);
  LinearProgram lp;
  for (int j = 0; j < 12; ++j) lp.add_variable(coef(rng));
  for (int i = 0; i < 6; ++i) {
    std::vector<LpTerm> row;
    for (int j = 0; j < 12; ++j) row.push_back({static_cast<std::size_t>(j), coef(rng)});
    lp.add_row(std::move(row), RowSense::GreaterEqual, coef(rng));
  }
  const auto a = solve_lp(lp), b = solve_lp(lp);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.duals, b.duals);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Simplex, RedundantEqualitiesAreHandled) {
  LinearProgram lp;
  lp.add_variable(1.0);
  lp.add_variable(2.0);
  lp.add_row({{0, 1.0}, {1, 1.0}}, RowSense::Equal, 1.0);
  lp.add_row({{0, 2.0}, {1, 2.0}}, RowSense::Equal, 2.0);
  const auto s = solve_lp(lp);
  expect_certified(lp, s);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

}  // namespace
}  // namespace homflow
