#pragma once

#include <vector>

#include "pentabend/common.hpp"

namespace pentabend {

/// Convex polygon in the plane, vertices counterclockwise with collinear
/// points removed.  Built from an arbitrary point set via `convex_hull` or
/// from a known vertex list via `from_vertices` (which reorients clockwise
/// input).  Degenerate input (all points collinear) yields size() < 3 and is
/// reported by `degenerate()`.
class ConvexPolygon {
  public:
    static ConvexPolygon convex_hull(std::vector<Vec2> points);
    static ConvexPolygon from_vertices(std::vector<Vec2> vertices);

    int size() const { return int(v_.size()); }
    bool degenerate() const { return v_.size() < 3; }
    const std::vector<Vec2>& vertices() const { return v_; }

    double area() const;

    /// True when `p` lies inside or within `slack` of every edge line
    /// (signed-distance test; slack is an absolute length).
    bool contains(const Vec2& p, double slack = 0.0) const;

    /// Euclidean distance from `p` to the polygon (0 inside, otherwise the
    /// distance to the nearest boundary segment).
    double distance(const Vec2& p) const;

  private:
    std::vector<Vec2> v_;
};

}  // namespace pentabend
