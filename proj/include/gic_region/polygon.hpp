#pragma once

// Small 2-D polytope helpers shared by the MAC intersection and the
// Han-Kobayashi vertex-enumeration LP.

#include <span>
#include <vector>

namespace gic {

struct Vertex {
  double x = 0.0;
  double y = 0.0;
};

/// cx * x + cy * y <= rhs
struct HalfPlane {
  double cx = 0.0;
  double cy = 0.0;
  double rhs = 0.0;
};

/// Every pairwise intersection of the constraint lines that satisfies all
/// constraints within `tol`, deduplicated at `tol`. Unordered.
std::vector<Vertex> enumerate_vertices(std::span<const HalfPlane> constraints, double tol);

/// Counterclockwise order around the centroid, starting from the vertex with
/// the smallest (y, x).
void sort_counterclockwise(std::vector<Vertex>& vertices);

}  // namespace gic
