#pragma once

// Sampling and analysis of the unit ball B = {f_hom <= 1}: gauge and support
// values on a direction grid, the reconstructed polygon in d = 2, vertex
// detection, and a randomized audit of the norm axioms.

#include <cstdint>
#include <functional>
#include <vector>

#include "homflow/cell_problem.hpp"
#include "homflow/geometry.hpp"
#include "homflow/parallel.hpp"

namespace homflow {

struct BallSample {
  Vec direction;      // unit vector u
  double gauge = 0.0; // f_hom(u)
  double support = 0.0; // h_B(u)
  Vec boundary;       // u / f_hom(u)
  Vec support_point;  // a maximizer of <u, .> over B
};

struct NormBall {
  int dim = 0;
  std::vector<BallSample> samples;
  std::vector<Point2> polygon;        // d = 2 only
  std::vector<std::size_t> vertices;  // indices into polygon
};

/// Unit directions: +-1 in d = 1, n equispaced angles in d = 2, a Fibonacci
/// lattice in d = 3 and seeded Gaussian samples beyond.
std::vector<Vec> sample_directions(int dim, int n);

/// Throws InvalidArgument for n < 8.
NormBall sample_ball(const CellProblem& cell, int n, Execution exec = Execution::Parallel);
NormBall sample_ball(const PeriodicGraph& g, int n, Execution exec = Execution::Parallel);

/// A ball given by explicit gauge and support functions (d = 2), used for
/// synthetic controls such as the Euclidean disc.
NormBall sample_gauge_ball(const std::function<double(std::span<const double>)>& gauge,
                           const std::function<double(std::span<const double>)>& support, int n);

struct VertexReport {
  std::vector<Point2> vertices;
  std::size_t facets = 0;
};

/// Polygon points whose turning angle exceeds `angle_tol`.
VertexReport detect_vertices(const NormBall& ball, double angle_tol = 1e-6);

struct NormAudit {
  int pairs = 0;
  double homogeneity = 0.0;   // max |f(t j) - |t| f(j)|
  double triangle = 0.0;      // max f(a + b) - f(a) - f(b), clipped at 0
  double min_unit_value = 0.0;  // min f(j) over |j|_2 = 1
  double lower_bound_constant = 0.0;
  double lower_bound = 0.0;   // max c |j|_2 - f(j), clipped at 0
  double duality_gap = 0.0;

  double max_violation() const;
  bool ok(double tol = 1e-8) const { return min_unit_value > 0.0 && max_violation() < tol; }
};

NormAudit audit_norm(const CellProblem& cell, int pairs, std::uint64_t seed = 1,
                     Execution exec = Execution::Parallel);

}  // namespace homflow
