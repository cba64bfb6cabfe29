#include "gic_region/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gic {

std::vector<Vertex> enumerate_vertices(std::span<const HalfPlane> constraints, double tol) {
  std::vector<Vertex> out;
  const std::size_t n = constraints.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const HalfPlane& p = constraints[i];
      const HalfPlane& q = constraints[j];
      const double det = p.cx * q.cy - p.cy * q.cx;
      if (std::abs(det) < 1e-15) continue;  // parallel or identical
      const Vertex v{(p.rhs * q.cy - p.cy * q.rhs) / det, (p.cx * q.rhs - p.rhs * q.cx) / det};
      const bool feasible = std::all_of(constraints.begin(), constraints.end(), [&](const HalfPlane& h) {
        return h.cx * v.x + h.cy * v.y <= h.rhs + tol;
      });
      if (!feasible) continue;
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Vertex& w) {
        return std::abs(w.x - v.x) <= tol && std::abs(w.y - v.y) <= tol;
      });
      if (!seen) out.push_back(v);
    }
  }
  return out;
}

void sort_counterclockwise(std::vector<Vertex>& vertices) {
  if (vertices.size() < 2) return;
  double cx = 0.0;
  double cy = 0.0;
  for (const Vertex& v : vertices) {
    cx += v.x;
    cy += v.y;
  }
  cx /= static_cast<double>(vertices.size());
  cy /= static_cast<double>(vertices.size());

  const auto start = *std::min_element(vertices.begin(), vertices.end(), [](const Vertex& l, const Vertex& r) {
    return l.y < r.y || (l.y == r.y && l.x < r.x);
  });
  const double start_angle = std::atan2(start.y - cy, start.x - cx);
  auto rel_angle = [&](const Vertex& v) {
    double ang = std::atan2(v.y - cy, v.x - cx) - start_angle;
    while (ang < 0.0) ang += 2.0 * std::numbers::pi;
    while (ang >= 2.0 * std::numbers::pi) ang -= 2.0 * std::numbers::pi;
    return ang;
  };
  std::sort(vertices.begin(), vertices.end(),
            [&](const Vertex& l, const Vertex& r) { return rel_angle(l) < rel_angle(r); });
  // The start vertex has relative angle 0 up to rounding; make it first.
  auto it = std::find_if(vertices.begin(), vertices.end(),
                         [&](const Vertex& v) { return v.x == start.x && v.y == start.y; });
  std::rotate(vertices.begin(), it, vertices.end());
}

}  // namespace gic
