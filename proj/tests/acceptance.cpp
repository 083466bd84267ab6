// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "homflow/cell_problem.hpp"
#include "homflow/convergence.hpp"
#include "homflow/error.hpp"
#include "homflow/graph_io.hpp"
#include "homflow/lp.hpp"
#include "homflow/measure_io.hpp"
#include "homflow/min_cost_flow.hpp"
#include "homflow/norm_analysis.hpp"
#include "homflow/periodic_graph.hpp"
#include "homflow/transport.hpp"

using namespace homflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string data(const std::string& name) { return std::string(HOMFLOW_DATA_DIR) + "/" + name; }

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Largest duality gap over every Optimal LP solved in this run.
double g_max_gap = 0.0;
int g_lp_count = 0;

void record_gap(double gap) {
  g_max_gap = std::max(g_max_gap, std::abs(gap));
  ++g_lp_count;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome ac1() {
  Stopwatch clock;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = size(rng);
    std::vector<double> pos;
    while (static_cast<int>(pos.size()) < n) {
      pos.clear();
      for (int i = 0; i < n; ++i) pos.push_back(u(rng));
      std::sort(pos.begin(), pos.end());
      pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    }
    const CellProblem cell(make_1d_nn(pos));
    for (double j : {1.0, -1.0, 2.5, -2.5, 0.1, -0.1}) {
      const auto s = cell.f_hom(std::vector<double>{j});
      record_gap(s.duality_gap);
      worst = std::max(worst, std::abs(s.value - std::abs(j)));
    }
  }
  const double t = clock.seconds();
  return {worst <= 1e-8 && t < 2.0,
          "max |f_hom(j) - |j|| = " + fmt("%.3g", worst) + ", " + fmt("%.3f", t) + " s"};
}

Outcome ac2() {
  Stopwatch clock;
  const CellProblem axis(make_cubic(2, Neighborhood::Axis));
  const CellProblem linf(make_cubic(2, Neighborhood::Linf));
  double worst = 0.0, cert = 0.0, lmin = kInf, lmax = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * kPi * k / 64;
    const Vec j{std::cos(th), std::sin(th)};
    const auto s = axis.f_hom(j);
    record_gap(s.duality_gap);
    worst = std::max(worst, std::abs(s.value - (std::abs(j[0]) + std::abs(j[1]))));
    // Dual feasibility for a single-fiber graph: |<y, d>| <= orbit cost.
    const auto& g = axis.graph();
    for (std::size_t i = 0; i < g.orbit_count(); ++i) {
      const double y_d = s.dual[0] * g.displacement(i)[0] + s.dual[1] * g.displacement(i)[1];
      cert = std::max(cert, std::abs(y_d) - g.orbit_cost(i));
    }
    cert = std::max(cert, std::abs(s.dual[0] * j[0] + s.dual[1] * j[1] - s.value));
    const auto l = linf.f_hom(j);
    record_gap(l.duality_gap);
    lmin = std::min(lmin, l.value);
    lmax = std::max(lmax, l.value);
  }
  const double t = clock.seconds();
  return {worst <= 1e-8 && cert <= 1e-8 && t < 5.0,
          "max |f_hom - |j|_1| = " + fmt("%.3g", worst) + ", certificate defect " +
              fmt("%.3g", cert) + ", linf range [" + fmt("%.6f", lmin) + ", " +
              fmt("%.6f", lmax) + "], " + fmt("%.3f", t) + " s"};
}

std::pair<DiscreteMeasure, DiscreteMeasure> random_pair(std::size_t vertices, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  std::uniform_int_distribution<int> count(1, 10);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::vector<double> a(vertices, 0.0), b(vertices, 0.0);
  double ta = 0.0, tb = 0.0;
  const int na = count(rng), nb = count(rng);
  for (int k = 0; k < na; ++k) {
    const double w = weight(rng);
    a[pick(rng)] += w;
    ta += w;
  }
  for (int k = 0; k < nb; ++k) {
    const double w = weight(rng);
    b[pick(rng)] += w;
    tb += w;
  }
  for (double& w : b) w *= ta / tb;
  double sb = 0.0;
  for (double w : b) sb += w;
  *std::max_element(b.begin(), b.end()) += ta - sb;
  return {DiscreteMeasure(a), DiscreteMeasure(b)};
}

Outcome ac3() {
  Stopwatch clock;
  std::mt19937_64 rng(303);
  const std::vector<PeriodicGraph> graphs{make_cubic(2, Neighborhood::Axis), make_triangular()};
  double spread = 0.0;
  std::size_t violations = 0;
  int instances = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const RescaledGraph rg(graphs[trial % 2], (trial / 2) % 2 == 0 ? 4 : 8);
    const auto [m0, m1] = random_pair(rg.vertex_count(), rng);
    const auto flow = ma_static(rg, m0, m1);
    const auto coupling = w1_coupling(rg, m0, m1);
    const auto dual = w1_dual(rg, m0, m1);
    record_gap(coupling.duality_gap);
    record_gap(dual.duality_gap);
    spread = std::max({spread, std::abs(flow.value - coupling.value),
                       std::abs(flow.value - dual.value), std::abs(coupling.value - dual.value)});
    violations += support_edge_check(rg, flow.flux).size();
    ++instances;
  }
  const double t = clock.seconds();
  return {spread <= 1e-7 && violations == 0 && t < 30.0,
          std::to_string(instances) + " instances, max pairwise gap " + fmt("%.3g", spread) +
              ", " + std::to_string(violations) + " support violations, " + fmt("%.3f", t) + " s"};
}

Outcome ac4() {
  Stopwatch clock;
  bool ok = true;
  std::string detail;
  for (const char* name : {"1d.json", "cubic2-axis.json", "cubic2-linf.json", "triangular.json",
                           "honeycomb.json"}) {
    const CellProblem cell(load_graph(data(name)));
    const auto audit = audit_norm(cell, 200, 7);
    record_gap(audit.duality_gap);
    ok = ok && audit.ok(1e-8);
    detail += std::string(name) + " viol " + fmt("%.2g", audit.max_violation());
    if (cell.graph().dim() == 2) {
      const auto v128 = detect_vertices(sample_ball(cell, 128)).vertices.size();
      const auto v256 = detect_vertices(sample_ball(cell, 256)).vertices.size();
      ok = ok && v128 == v256;
      detail += " vertices " + std::to_string(v128) + "/" + std::to_string(v256);
    }
    detail += "; ";
  }
  const auto euclid = [](std::span<const double> x) { return std::hypot(x[0], x[1]); };
  const auto d128 = detect_vertices(sample_gauge_ball(euclid, euclid, 128)).vertices.size();
  const auto d256 = detect_vertices(sample_gauge_ball(euclid, euclid, 256)).vertices.size();
  ok = ok && d128 < d256;
  detail += "disc " + std::to_string(d128) + "/" + std::to_string(d256) + ", " +
            fmt("%.3f", clock.seconds()) + " s";
  return {ok, detail};
}

Outcome ac5() {
  Stopwatch clock;
  const CellProblem cell(load_graph(data("cubic2-axis.json")));
  const std::vector<int> grid{4, 8, 16, 32};
  const auto dirac = converge_dirac(cell, {0.0, 0.0}, {0.5, 0.25}, grid);
  const auto& last = dirac.rows.back();
  // The limit is the torus l1 distance of the endpoints.
  const bool limit_ok = std::abs(last.limit - 0.75) <= 1e-8;
  const bool dirac_ok =
      dirac.errors_nonincreasing() && last.error <= 0.05 * last.limit && limit_ok;

  std::vector<WeightedPoint> mu = load_measure(data("points-mu.json")).points;
  std::vector<WeightedPoint> nu = load_measure(data("points-nu.json")).points;
  const auto meas = converge_measures(cell, mu, nu, grid);
  const auto& mlast = meas.rows.back();
  const bool meas_ok = mu.size() == 3 && nu.size() == 3 && mlast.error <= 0.1 * mlast.limit;
  const double t = clock.seconds();
  std::string errs;
  for (const auto& r : dirac.rows) errs += fmt("%.3g", r.error) + " ";
  return {dirac_ok && meas_ok && t < 60.0,
          "dirac errors " + errs + "limit " + fmt("%.6f", last.limit) + "; measure error " +
              fmt("%.3g", mlast.error) + " of limit " + fmt("%.6f", mlast.limit) + ", " +
              fmt("%.3f", t) + " s"};
}

DynamicCurve random_curve(const RescaledGraph& rg, std::mt19937_64& rng, bool constant) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal;
  DynamicCurve c;
  c.times = {0.0, 1.0};
  for (int k = 1; k < 5; ++k) c.times.push_back(u(rng));
  std::sort(c.times.begin(), c.times.end());
  std::vector<double> m(rg.vertex_count());
  for (double& w : m) w = 5.0 + u(rng);
  c.masses.emplace_back(m);
  EdgeFlux j(rg.edges().size());
  for (int k = 0; k < 5; ++k) {
    if (k == 0 || !constant)
      for (double& v : j) v = 0.3 * normal(rng);
    const double dt = c.times[k + 1] - c.times[k];
    const auto div = divergence(rg, j);
    for (std::size_t x = 0; x < m.size(); ++x) m[x] -= dt * div[x];
    c.fluxes.push_back(j);
    c.masses.emplace_back(m);
  }
  return c;
}

Outcome ac6() {
  Stopwatch clock;
  std::mt19937_64 rng(606);
  const std::vector<RescaledGraph> graphs{RescaledGraph(make_cubic(2, Neighborhood::Axis), 4),
                                          RescaledGraph(make_triangular(), 4),
                                          RescaledGraph(make_honeycomb(), 3)};
  double residual = 0.0, jensen = 0.0, equality = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& rg = graphs[trial % graphs.size()];
    const auto out = contract_dynamic(rg, random_curve(rg, rng, false));
    residual = std::max(residual, out.divergence_residual);
    jensen = std::max(jensen, out.energy_after - out.energy_before);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto& rg = graphs[trial % graphs.size()];
    const auto out = contract_dynamic(rg, random_curve(rg, rng, true));
    residual = std::max(residual, out.divergence_residual);
    equality = std::max(equality, std::abs(out.energy_after - out.energy_before));
  }
  return {residual < 1e-10 && jensen <= 1e-10 && equality <= 1e-10,
          "div residual " + fmt("%.3g", residual) + ", max F(avg) - avg F " + fmt("%.3g", jensen) +
              ", constant-curve defect " + fmt("%.3g", equality) + ", " +
              fmt("%.3f", clock.seconds()) + " s"};
}

FlowNetwork random_network(std::mt19937_64& rng, bool capacitated) {
  std::uniform_int_distribution<int> nodes(4, 12);
  std::uniform_real_distribution<double> cost(0.0, 5.0), cap(0.5, 3.0), supply(0.0, 1.0);
  FlowNetwork net;
  const int n = nodes(rng);
  net.supply.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    const auto a = static_cast<std::size_t>(v), b = static_cast<std::size_t>((v + 1) % n);
    net.arcs.push_back({a, b, cost(rng), capacitated ? 10.0 : kInf});
    net.arcs.push_back({b, a, cost(rng), capacitated ? 10.0 : kInf});
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < 2 * n; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a != b)
      net.arcs.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b), cost(rng),
                          capacitated ? cap(rng) : kInf});
  }
  double total = 0.0;
  for (int v = 0; v + 1 < n; ++v) {
    net.supply[v] = supply(rng) - 0.5;
    total += net.supply[v];
  }
  net.supply[n - 1] = -total;
  return net;
}

Outcome ac7() {
  Stopwatch clock;
  std::mt19937_64 rng(707);
  double worst = 0.0;
  int optimal = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = random_network(rng, trial % 2 == 1);
    const auto flow = solve_min_cost_flow(net);
    const auto lp = solve_lp(to_linear_program(net));
    if (lp.status != LpStatus::Optimal) return {false, "network LP not optimal"};
    ++optimal;
    record_gap(lp.duality_gap);
    worst = std::max(worst, std::abs(flow.cost - lp.objective));
  }
  return {worst <= 1e-8 && g_max_gap < 1e-8,
          std::to_string(optimal) + " networks, max |flow - LP| " + fmt("%.3g", worst) +
              ", max duality gap " + fmt("%.3g", g_max_gap) + " over " +
              std::to_string(g_lp_count) + " optimal LPs, " + fmt("%.3f", clock.seconds()) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 1D identity", ac1},          {"AC2 cubic lattice", ac2},
      {"AC3 MA-W1 identity", ac3},       {"AC4 norm and crystallinity", ac4},
      {"AC5 convergence witness", ac5},  {"AC6 static contraction", ac6},
      {"AC7 solver oracles", ac7}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", out.ok ? "PASS" : "FAIL", name, out.detail.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
