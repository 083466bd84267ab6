#include "homflow/norm_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "homflow/error.hpp"

namespace homflow {
namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

Vec scaled(std::span<const double> v, double t) {
  Vec out(v.begin(), v.end());
  for (double& c : out) c *= t;
  return out;
}

void build_polygon(NormBall& ball) {
  if (ball.dim != 2) return;
  std::vector<Point2> pts;
  for (const auto& s : ball.samples) {
    pts.push_back({s.boundary[0], s.boundary[1]});
    if (!s.support_point.empty()) pts.push_back({s.support_point[0], s.support_point[1]});
  }
  ball.polygon = hull_around_origin(std::move(pts));
  const auto turns = turning_angles(ball.polygon);
  for (std::size_t i = 0; i < turns.size(); ++i)
    if (turns[i] > 1e-6) ball.vertices.push_back(i);
}

}  // namespace

std::vector<Vec> sample_directions(int dim, int n) {
  std::vector<Vec> dirs;
  if (dim == 1) return {{1.0}, {-1.0}};
  if (dim == 2) {
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * M_PI * k / n;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
    return dirs;
  }
  if (dim == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(1.0 - z * z);
      dirs.push_back({r * std::cos(golden * k), r * std::sin(golden * k), z});
    }
    return dirs;
  }
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  while (static_cast<int>(dirs.size()) < n) {
    Vec u(dim);
    for (double& c : u) c = normal(rng);
    const double len = norm2(u);
    if (len < 1e-12) continue;
    dirs.push_back(scaled(u, 1.0 / len));
  }
  return dirs;
}

NormBall sample_ball(const CellProblem& cell, int n, Execution exec) {
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "need at least 8 sample directions");
  NormBall ball;
  ball.dim = cell.graph().dim();
  const auto dirs = sample_directions(ball.dim, n);
  ball.samples = parallel_map<BallSample>(dirs.size(), exec, [&](std::size_t k) {
    BallSample s;
    s.direction = dirs[k];
    s.gauge = cell.f_hom(dirs[k]).value;
    if (!(s.gauge > 0.0)) throw Error(ErrorCode::InternalConsistency, "nonpositive gauge value");
    s.boundary = scaled(dirs[k], 1.0 / s.gauge);
    const auto sv = cell.support(dirs[k]);
    s.support = sv.value;
    s.support_point = sv.point;
    return s;
  });
  build_polygon(ball);
  return ball;
}

NormBall sample_ball(const PeriodicGraph& g, int n, Execution exec) {
  return sample_ball(CellProblem(g), n, exec);
}

NormBall sample_gauge_ball(const std::function<double(std::span<const double>)>& gauge,
                           const std::function<double(std::span<const double>)>& support, int n) {
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "need at least 8 sample directions");
  NormBall ball;
  ball.dim = 2;
  for (const auto& u : sample_directions(2, n)) {
    BallSample s;
    s.direction = u;
    s.gauge = gauge(u);
    s.boundary = scaled(u, 1.0 / s.gauge);
    s.support = support(u);
    ball.samples.push_back(std::move(s));
  }
  build_polygon(ball);
  return ball;
}

VertexReport detect_vertices(const NormBall& ball, double angle_tol) {
  if (ball.dim != 2) throw Error(ErrorCode::InvalidArgument, "vertex detection needs d = 2");
  VertexReport out;
  const auto turns = turning_angles(ball.polygon);
  for (std::size_t i = 0; i < turns.size(); ++i)
    if (turns[i] > angle_tol) out.vertices.push_back(ball.polygon[i]);
  out.facets = out.vertices.size();
  return out;
}

double NormAudit::max_violation() const {
  return std::max({homogeneity, triangle, lower_bound});
}

NormAudit audit_norm(const CellProblem& cell, int pairs, std::uint64_t seed, Execution exec) {
  const int d = cell.graph().dim();
  struct Draw {
    Vec a, b;
    double t = 0.0;
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(-3.0, 3.0);
  std::vector<Draw> draws(pairs);
  for (auto& dr : draws) {
    dr.a.resize(d);
    dr.b.resize(d);
    for (double& c : dr.a) c = normal(rng);
    for (double& c : dr.b) c = normal(rng);
    dr.t = uniform(rng);
  }
  NormAudit audit;
  audit.pairs = pairs;
  audit.lower_bound_constant = norm_lower_bound_constant(cell.graph());
  const double c = audit.lower_bound_constant;

  struct Outcome {
    double homogeneity, triangle, unit, lower, gap;
  };
  const auto outcomes = parallel_map<Outcome>(draws.size(), exec, [&](std::size_t i) {
    const auto& dr = draws[i];
    const auto fa = cell.f_hom(dr.a);
    const auto fb = cell.f_hom(dr.b);
    Vec sum(d);
    for (int k = 0; k < d; ++k) sum[k] = dr.a[k] + dr.b[k];
    const auto fs = cell.f_hom(sum);
    const auto ft = cell.f_hom(scaled(dr.a, dr.t));
    const auto fm = cell.f_hom(scaled(dr.a, -3.0));
    const auto fu = cell.f_hom(scaled(dr.a, 1.0 / norm2(dr.a)));
    Outcome o;
    o.homogeneity = std::max(std::abs(ft.value - std::abs(dr.t) * fa.value),
                             std::abs(fm.value - 3.0 * fa.value));
    o.triangle = std::max(0.0, fs.value - fa.value - fb.value);
    o.unit = fu.value;
    o.lower = 0.0;
    for (const auto* f : {&fa, &fb, &fs})
      o.lower = std::max(o.lower, c * norm2(f->direction) - f->value);
    o.gap = std::max({fa.duality_gap, fb.duality_gap, fs.duality_gap, ft.duality_gap,
                      fm.duality_gap, fu.duality_gap});
    return o;
  });
  audit.min_unit_value = outcomes.empty() ? 0.0 : kInf;
  for (const auto& o : outcomes) {
    audit.homogeneity = std::max(audit.homogeneity, o.homogeneity);
    audit.triangle = std::max(audit.triangle, o.triangle);
    audit.min_unit_value = std::min(audit.min_unit_value, o.unit);
    audit.lower_bound = std::max(audit.lower_bound, o.lower);
    audit.duality_gap = std::max(audit.duality_gap, o.gap);
  }
  return audit;
}

}  // namespace homflow
