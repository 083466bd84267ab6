#include "homflow/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace homflow {
namespace {

double angle_of(const Point2& p) {
  const double a = std::atan2(p.y, p.x);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

}  // namespace

std::vector<Point2> hull_around_origin(std::vector<Point2> points, double merge_tol) {
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, std::hypot(p.x, p.y));
  if (scale == 0.0) return {};
  std::vector<std::pair<double, Point2>> keyed;
  for (const auto& p : points) keyed.push_back({angle_of(p), p});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return std::hypot(a.second.x, a.second.y) > std::hypot(b.second.x, b.second.y);
  });

  const double merge = merge_tol * scale;
  std::vector<Point2> ring;
  for (const auto& [angle, p] : keyed) {
    if (!ring.empty()) {
      Point2& last = ring.back();
      if (std::hypot(p.x - last.x, p.y - last.y) <= merge || std::abs(cross(last, p)) <= 1e-15 * scale * scale) {
        if (std::hypot(p.x, p.y) > std::hypot(last.x, last.y)) last = p;
        continue;
      }
    }
    ring.push_back(p);
  }
  if (ring.size() > 1) {
    const Point2 &a = ring.front(), &b = ring.back();
    if (std::hypot(a.x - b.x, a.y - b.y) <= merge) {
      if (std::hypot(b.x, b.y) > std::hypot(a.x, a.y)) ring.front() = b;
      ring.pop_back();
    }
  }

  // Remove reflex points until the ring is convex.
  const double tol = 1e-12 * scale * scale;
  bool changed = true;
  while (changed && ring.size() > 3) {
    changed = false;
    std::vector<Point2> kept;
    const std::size_t n = ring.size();
    std::vector<char> drop(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& prev = ring[(i + n - 1) % n];
      const Point2& next = ring[(i + 1) % n];
      if (cross(ring[i] - prev, next - ring[i]) < -tol) {
        drop[i] = 1;
        changed = true;
        ++i;  // never drop two neighbours in one sweep
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!drop[i]) kept.push_back(ring[i]);
    ring = std::move(kept);
  }
  return ring;
}

std::vector<double> turning_angles(const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = polygon[i] - polygon[(i + n - 1) % n];
    const Point2 b = polygon[(i + 1) % n] - polygon[i];
    out[i] = std::atan2(cross(a, b), dot(a, b));
  }
  return out;
}

bool is_convex(const std::vector<Point2>& polygon, double tol) {
  for (double t : turning_angles(polygon))
    if (t < -tol) return false;
  return true;
}

}  // namespace homflow
