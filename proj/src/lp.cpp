#include "homflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homflow/error.hpp"

namespace homflow {

std::size_t LinearProgram::add_variable(double cost, double lower, double upper) {
  cost_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return cost_.size() - 1;
}

std::size_t LinearProgram::add_row(std::vector<LpTerm> terms, RowSense sense, double rhs) {
  rows_.push_back(LpRow{std::move(terms), sense, rhs});
  return rows_.size() - 1;
}

void LinearProgram::check_well_formed() const {
  for (std::size_t j = 0; j < cost_.size(); ++j) {
    if (!std::isfinite(cost_[j])) throw Error(ErrorCode::InvalidArgument, "non-finite cost");
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] == kInf || upper_[j] == -kInf ||
        lower_[j] > upper_[j])
      throw Error(ErrorCode::InvalidArgument, "bad bounds on variable " + std::to_string(j));
  }
  for (const auto& r : rows_) {
    if (!std::isfinite(r.rhs)) throw Error(ErrorCode::InvalidArgument, "non-finite right-hand side");
    for (const auto& t : r.terms)
      if (t.var >= cost_.size() || !std::isfinite(t.coef))
        throw Error(ErrorCode::InvalidArgument, "bad row term");
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

struct ColumnRef {
  std::size_t col;
  double sign;
};

// min c^T s  s.t.  A s = b,  s >= 0,  b >= 0, with an identity basis among
// the slack and artificial columns.
struct StandardForm {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> a;  // m x n, row-major
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> row_sign;  // normalization sign per std row
  std::vector<std::size_t> initial_basis;
  std::vector<char> artificial;
  std::vector<double> offset;  // x_j = offset_j + sum sign * s_col
  std::vector<std::vector<ColumnRef>> var_cols;
  double b_scale = 0.0;

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t nv = lp.variable_count();
  sf.offset.assign(nv, 0.0);
  sf.var_cols.resize(nv);
  std::size_t ncol = 0;
  struct BoundRow {
    std::size_t col;
    double width;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = lp.lower()[j], hi = lp.upper()[j];
    if (std::isfinite(lo)) {
      sf.offset[j] = lo;
      sf.var_cols[j].push_back({ncol, 1.0});
      if (std::isfinite(hi)) bound_rows.push_back({ncol, hi - lo});
      ++ncol;
    } else if (std::isfinite(hi)) {
      sf.offset[j] = hi;
      sf.var_cols[j].push_back({ncol++, -1.0});
    } else {
      sf.var_cols[j].push_back({ncol++, 1.0});
      sf.var_cols[j].push_back({ncol++, -1.0});
    }
  }
  const std::size_t n_struct = ncol;

  struct SparseRow {
    std::vector<std::pair<std::size_t, double>> coefs;
    RowSense sense;
    double rhs;
  };
  std::vector<SparseRow> rows;
  for (const auto& r : lp.rows()) {
    SparseRow sr{{}, r.sense, r.rhs};
    for (const auto& t : r.terms) {
      sr.rhs -= t.coef * sf.offset[t.var];
      for (const auto& cr : sf.var_cols[t.var]) sr.coefs.emplace_back(cr.col, t.coef * cr.sign);
    }
    rows.push_back(std::move(sr));
  }
  for (const auto& br : bound_rows) rows.push_back({{{br.col, 1.0}}, RowSense::LessEqual, br.width});

  sf.m = rows.size();
  sf.row_sign.assign(sf.m, 1.0);
  for (std::size_t i = 0; i < sf.m; ++i) {
    auto& r = rows[i];
    if (r.rhs < 0.0) {
      sf.row_sign[i] = -1.0;
      r.rhs = -r.rhs;
      for (auto& cv : r.coefs) cv.second = -cv.second;
      if (r.sense == RowSense::LessEqual)
        r.sense = RowSense::GreaterEqual;
      else if (r.sense == RowSense::GreaterEqual)
        r.sense = RowSense::LessEqual;
    }
  }
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& r : rows) {
    if (r.sense != RowSense::Equal) ++n_slack;
    if (r.sense != RowSense::LessEqual) ++n_art;
  }
  sf.n = n_struct + n_slack + n_art;
  sf.a.assign(sf.m * sf.n, 0.0);
  sf.b.resize(sf.m);
  sf.c.assign(sf.n, 0.0);
  sf.artificial.assign(sf.n, 0);
  sf.initial_basis.resize(sf.m);
  std::size_t slack = n_struct, art = n_struct + n_slack;
  for (std::size_t i = 0; i < sf.m; ++i) {
    const auto& r = rows[i];
    for (const auto& [col, v] : r.coefs) sf.at(i, col) += v;
    sf.b[i] = r.rhs;
    sf.b_scale = std::max(sf.b_scale, r.rhs);
    if (r.sense == RowSense::LessEqual) {
      sf.at(i, slack) = 1.0;
      sf.initial_basis[i] = slack++;
    } else {
      if (r.sense == RowSense::GreaterEqual) sf.at(i, slack++) = -1.0;
      sf.at(i, art) = 1.0;
      sf.artificial[art] = 1;
      sf.initial_basis[i] = art++;
    }
  }
  for (std::size_t j = 0; j < nv; ++j)
    for (const auto& cr : sf.var_cols[j]) sf.c[cr.col] += lp.costs()[j] * cr.sign;
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf, bool parallel)
      : m_(sf.m), n_(sf.n), w_(sf.n + 1), t_(sf.m * (sf.n + 1)), obj_(sf.n + 1, 0.0),
        basis_(sf.initial_basis), parallel_(parallel) {
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(sf.a.begin() + i * n_, sf.a.begin() + (i + 1) * n_, t_.begin() + i * w_);
      t_[i * w_ + n_] = sf.b[i];
    }
  }

  double at(std::size_t i, std::size_t j) const { return t_[i * w_ + j]; }
  double rhs(std::size_t i) const { return t_[i * w_ + n_]; }
  double reduced_cost(std::size_t j) const { return obj_[j]; }
  double objective_value() const { return -obj_[n_]; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void set_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) obj_[j] = j < n_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[i * w_];
      for (std::size_t j = 0; j <= n_; ++j) obj_[j] -= cb * row[j];
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    double* prow = &t_[r * w_];
    const double inv = 1.0 / prow[col];
    for (std::size_t j = 0; j < w_; ++j) prow[j] *= inv;
    prow[col] = 1.0;
    const long m = static_cast<long>(m_);
    const std::size_t w = w_;
    double* base = t_.data();
#pragma omp parallel for schedule(static) if (parallel_ && m_ * w_ > 40000)
    for (long i = 0; i < m; ++i) {
      if (static_cast<std::size_t>(i) == r) continue;
      double* row = base + static_cast<std::size_t>(i) * w;
      const double f = row[col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[col] = 0.0;
    }
    const double f = obj_[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j < w_; ++j) obj_[j] -= f * prow[j];
      obj_[col] = 0.0;
    }
    basis_[r] = col;
  }

 private:
  std::size_t m_, n_, w_;
  std::vector<double> t_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  bool parallel_;
};

enum class PhaseResult { Optimal, Unbounded };

struct PhaseOutcome {
  PhaseResult result;
  std::size_t entering = 0;  // set when Unbounded
};

PhaseOutcome run_phase(Tableau& tab, const StandardForm& sf, bool allow_artificial,
                       const SimplexOptions& opt, std::size_t& iterations, std::size_t limit) {
  while (true) {
    // Bland: lowest-index improving column, lowest-index basic variable on ties.
    std::size_t enter = sf.n;
    for (std::size_t j = 0; j < sf.n; ++j) {
      if (!allow_artificial && sf.artificial[j]) continue;
      if (tab.reduced_cost(j) < -opt.optimality_tol) {
        enter = j;
        break;
      }
    }
    if (enter == sf.n) return {PhaseResult::Optimal};
    std::size_t leave = sf.m;
    double best = kInf;
    for (std::size_t i = 0; i < sf.m; ++i) {
      const double a = tab.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      if (leave == sf.m) {
        best = ratio;
        leave = i;
        continue;
      }
      const double tie = 1e-12 * (1.0 + std::abs(best));
      if (ratio < best - tie) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + tie && tab.basis()[i] < tab.basis()[leave]) {
        leave = i;
      }
    }
    if (leave == sf.m) return {PhaseResult::Unbounded, enter};
    if (++iterations > limit)
      throw Error(ErrorCode::NumericalBreakdown, "simplex iteration limit exceeded");
    tab.pivot(leave, enter);
  }
}

// Dense LU with partial pivoting of the m x m basis matrix.
class BasisFactor {
 public:
  bool factor(const StandardForm& sf, const std::vector<std::size_t>& basis) {
    m_ = sf.m;
    lu_.assign(m_ * m_, 0.0);
    perm_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      perm_[i] = i;
      for (std::size_t k = 0; k < m_; ++k) lu_[i * m_ + k] = sf.at(i, basis[k]);
    }
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m_; ++i)
        if (std::abs(lu_[i * m_ + k]) > std::abs(lu_[p * m_ + k])) p = i;
      if (std::abs(lu_[p * m_ + k]) < 1e-13) return false;
      if (p != k) {
        for (std::size_t j = 0; j < m_; ++j) std::swap(lu_[k * m_ + j], lu_[p * m_ + j]);
        std::swap(perm_[k], perm_[p]);
      }
      const double piv = lu_[k * m_ + k];
      for (std::size_t i = k + 1; i < m_; ++i) {
        double& l = lu_[i * m_ + k];
        if (l == 0.0) continue;
        l /= piv;
        for (std::size_t j = k + 1; j < m_; ++j) lu_[i * m_ + j] -= l * lu_[k * m_ + j];
      }
    }
    return true;
  }

  // B x = rhs
  std::vector<double> solve(const std::vector<double>& rhs) const {
    std::vector<double> x(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = rhs[perm_[i]];
      for (std::size_t k = 0; k < i; ++k) s -= lu_[i * m_ + k] * x[k];
      x[i] = s;
    }
    for (std::size_t i = m_; i-- > 0;) {
      double s = x[i];
      for (std::size_t k = i + 1; k < m_; ++k) s -= lu_[i * m_ + k] * x[k];
      x[i] = s / lu_[i * m_ + i];
    }
    return x;
  }

  // B^T y = rhs
  std::vector<double> solve_transposed(const std::vector<double>& rhs) const {
    std::vector<double> w(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = rhs[i];
      for (std::size_t k = 0; k < i; ++k) s -= lu_[k * m_ + i] * w[k];
      w[i] = s / lu_[i * m_ + i];
    }
    for (std::size_t i = m_; i-- > 0;) {
      double s = w[i];
      for (std::size_t k = i + 1; k < m_; ++k) s -= lu_[k * m_ + i] * w[k];
      w[i] = s;
    }
    std::vector<double> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[perm_[i]] = w[i];
    return y;
  }

 private:
  std::size_t m_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
};

// Primal values of the basic columns and duals y with B^T y = c_B, refined
// through a fresh factorization when it is well conditioned.
void basic_solution(const StandardForm& sf, const Tableau& tab, const std::vector<double>& c,
                    std::vector<double>& s, std::vector<double>& y) {
  const auto& basis = tab.basis();
  s.assign(sf.n, 0.0);
  y.assign(sf.m, 0.0);
  std::vector<double> cb(sf.m);
  for (std::size_t i = 0; i < sf.m; ++i) cb[i] = c[basis[i]];
  BasisFactor lu;
  if (lu.factor(sf, basis)) {
    const auto xb = lu.solve(sf.b);
    for (std::size_t i = 0; i < sf.m; ++i) s[basis[i]] = xb[i];
    y = lu.solve_transposed(cb);
  } else {
    for (std::size_t i = 0; i < sf.m; ++i) s[basis[i]] = tab.rhs(i);
    // Initial basis columns are unit vectors: d_col = c_col - y_i.
    for (std::size_t i = 0; i < sf.m; ++i)
      y[i] = c[sf.initial_basis[i]] - tab.reduced_cost(sf.initial_basis[i]);
  }
  const double tol = 1e-9 * (1.0 + sf.b_scale);
  for (double& v : s)
    if (v < 0.0 && v > -tol) v = 0.0;
}

std::vector<double> to_original(const StandardForm& sf, const std::vector<double>& s,
                                bool with_offset) {
  std::vector<double> x(sf.var_cols.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    double v = with_offset ? sf.offset[j] : 0.0;
    for (const auto& cr : sf.var_cols[j]) v += cr.sign * s[cr.col];
    x[j] = v;
  }
  return x;
}

std::vector<double> original_row_duals(const LinearProgram& lp, const StandardForm& sf,
                                       const std::vector<double>& y_std) {
  std::vector<double> y(lp.row_count());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y_std[i] * sf.row_sign[i];
  return y;
}

double rhs_scale(const LinearProgram& lp) {
  double s = 0.0;
  for (const auto& r : lp.rows()) s = std::max(s, std::abs(r.rhs));
  return s;
}

}  // namespace

double primal_residual(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    worst = std::max(worst, lp.lower()[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper()[j]);
  }
  for (const auto& r : lp.rows()) {
    double act = 0.0;
    for (const auto& t : r.terms) act += t.coef * x[t.var];
    const double diff = act - r.rhs;
    switch (r.sense) {
      case RowSense::Equal: worst = std::max(worst, std::abs(diff)); break;
      case RowSense::LessEqual: worst = std::max(worst, diff); break;
      case RowSense::GreaterEqual: worst = std::max(worst, -diff); break;
    }
  }
  return worst;
}

namespace {

bool sign_feasible(const LinearProgram& lp, const std::vector<double>& y, double tol) {
  for (std::size_t i = 0; i < lp.row_count(); ++i) {
    if (lp.rows()[i].sense == RowSense::GreaterEqual && y[i] < -tol) return false;
    if (lp.rows()[i].sense == RowSense::LessEqual && y[i] > tol) return false;
  }
  return true;
}

std::vector<double> transpose_times(const LinearProgram& lp, const std::vector<double>& y) {
  std::vector<double> g(lp.variable_count(), 0.0);
  for (std::size_t i = 0; i < lp.row_count(); ++i)
    for (const auto& t : lp.rows()[i].terms) g[t.var] += t.coef * y[i];
  return g;
}

}  // namespace

double farkas_margin(const LinearProgram& lp, const std::vector<double>& y) {
  constexpr double tol = 1e-9;
  if (y.size() != lp.row_count() || !sign_feasible(lp, y, tol)) return -kInf;
  const auto g = transpose_times(lp, y);
  double by = 0.0;
  for (std::size_t i = 0; i < lp.row_count(); ++i) by += lp.rows()[i].rhs * y[i];
  double box_max = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double lo = lp.lower()[j], hi = lp.upper()[j];
    if (g[j] > tol) {
      if (!std::isfinite(hi)) return -kInf;
      box_max += g[j] * hi;
    } else if (g[j] < -tol) {
      if (!std::isfinite(lo)) return -kInf;
      box_max += g[j] * lo;
    } else if (std::isfinite(lo) || std::isfinite(hi)) {
      box_max += std::max(std::isfinite(lo) ? g[j] * lo : -kInf, std::isfinite(hi) ? g[j] * hi : -kInf);
    }
  }
  return by - box_max;
}

double lagrangian_bound(const LinearProgram& lp, const std::vector<double>& y, double tol) {
  if (y.size() != lp.row_count() || !sign_feasible(lp, y, tol)) return -kInf;
  const auto g = transpose_times(lp, y);
  double val = 0.0;
  for (std::size_t i = 0; i < lp.row_count(); ++i) val += lp.rows()[i].rhs * y[i];
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double d = lp.costs()[j] - g[j];
    const double lo = lp.lower()[j], hi = lp.upper()[j];
    if (d > tol) {
      if (!std::isfinite(lo)) return -kInf;
      val += d * lo;
    } else if (d < -tol) {
      if (!std::isfinite(hi)) return -kInf;
      val += d * hi;
    } else {
      const double first = d >= 0.0 ? lo : hi;
      const double second = d >= 0.0 ? hi : lo;
      if (std::isfinite(first))
        val += d * first;
      else if (std::isfinite(second))
        val += d * second;
    }
  }
  return val;
}

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt) {
  lp.check_well_formed();
  const StandardForm sf = to_standard_form(lp);
  Tableau tab(sf, opt.exec == Execution::Parallel);
  const std::size_t limit = opt.max_iterations ? opt.max_iterations : 50 * (sf.m + sf.n) + 1000;
  LpSolution sol;

  const bool need_phase1 =
      std::any_of(sf.artificial.begin(), sf.artificial.end(), [](char a) { return a != 0; });
  if (need_phase1) {
    std::vector<double> c1(sf.n, 0.0);
    for (std::size_t j = 0; j < sf.n; ++j)
      if (sf.artificial[j]) c1[j] = 1.0;
    tab.set_objective(c1);
    run_phase(tab, sf, true, opt, sol.iterations, limit);
    if (tab.objective_value() > opt.feasibility_tol * (1.0 + sf.b_scale)) {
      std::vector<double> s, y;
      basic_solution(sf, tab, c1, s, y);
      sol.status = LpStatus::Infeasible;
      sol.farkas = original_row_duals(lp, sf, y);
      return sol;
    }
    // Pivot zero-level artificials out of the basis where the row allows it.
    for (std::size_t i = 0; i < sf.m; ++i) {
      if (!sf.artificial[tab.basis()[i]]) continue;
      std::size_t best = sf.n;
      for (std::size_t j = 0; j < sf.n; ++j) {
        if (sf.artificial[j]) continue;
        if (std::abs(tab.at(i, j)) > 1e-9 &&
            (best == sf.n || std::abs(tab.at(i, j)) > std::abs(tab.at(i, best))))
          best = j;
      }
      if (best != sf.n) tab.pivot(i, best);
    }
  }

  tab.set_objective(sf.c);
  const PhaseOutcome out = run_phase(tab, sf, false, opt, sol.iterations, limit);
  if (out.result == PhaseResult::Unbounded) {
    std::vector<double> ray(sf.n, 0.0);
    ray[out.entering] = 1.0;
    for (std::size_t i = 0; i < sf.m; ++i) ray[tab.basis()[i]] = -tab.at(i, out.entering);
    double worst = 0.0;
    for (std::size_t i = 0; i < sf.m; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < sf.n; ++j) r += sf.at(i, j) * ray[j];
      worst = std::max(worst, std::abs(r));
    }
    if (worst > 1e-7)
      throw Error(ErrorCode::NumericalBreakdown, "unbounded ray failed verification");
    sol.status = LpStatus::Unbounded;
    sol.ray = to_original(sf, ray, false);
    return sol;
  }

  std::vector<double> s, y_std;
  basic_solution(sf, tab, sf.c, s, y_std);
  sol.status = LpStatus::Optimal;
  sol.x = to_original(sf, s, true);
  for (std::size_t j = 0; j < sol.x.size(); ++j) sol.objective += lp.costs()[j] * sol.x[j];
  sol.duals = original_row_duals(lp, sf, y_std);
  const auto g = transpose_times(lp, sol.duals);
  sol.reduced_costs.resize(lp.variable_count());
  for (std::size_t j = 0; j < g.size(); ++j) sol.reduced_costs[j] = lp.costs()[j] - g[j];
  sol.dual_objective = lagrangian_bound(lp, sol.duals, opt.optimality_tol);
  sol.duality_gap = std::abs(sol.objective - sol.dual_objective);
  sol.primal_residual = primal_residual(lp, sol.x);
  if (sol.primal_residual > opt.feasibility_tol * (1.0 + rhs_scale(lp)))
    throw Error(ErrorCode::NumericalBreakdown,
                "primal residual " + std::to_string(sol.primal_residual) + " after simplex");
  return sol;
}

}  // namespace homflow
