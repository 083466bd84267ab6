#pragma once

// Planar helpers for reconstructing star-shaped convex polygons around the
// origin.

#include <vector>

namespace homflow {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }

/// Convex hull of points surrounding the origin, counter-clockwise from the
/// positive x-axis. Points on hull edges are kept; points closer than
/// `merge_tol * scale` are merged, keeping the farther one from the origin.
std::vector<Point2> hull_around_origin(std::vector<Point2> points, double merge_tol = 1e-7);

/// Exterior turning angle at every vertex of a closed polygon, in (-pi, pi].
std::vector<double> turning_angles(const std::vector<Point2>& polygon);

/// All turning angles >= -tol.
bool is_convex(const std::vector<Point2>& polygon, double tol = 1e-12);

}  // namespace homflow
