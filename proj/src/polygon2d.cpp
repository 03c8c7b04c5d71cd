#include "pentabend/polygon2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pentabend {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + s * ab)).norm();
}

}  // namespace

ConvexPolygon ConvexPolygon::convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec2& a, const Vec2& b) {
                                 return a.x() == b.x() && a.y() == b.y();
                             }),
                 points.end());

    ConvexPolygon poly;
    const std::size_t n = points.size();
    if (n < 3) {
        poly.v_ = std::move(points);
        return poly;
    }
    // Andrew's monotone chain; strict turns only, so collinear points drop out.
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, base = k + 1; i-- > 0;) {  // upper hull
        while (k >= base && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    poly.v_ = std::move(hull);
    return poly;
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Vec2> vertices) {
    return convex_hull(std::move(vertices));
}

double ConvexPolygon::area() const {
    double twice = 0.0;
    const std::size_t n = v_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v_[i];
        const Vec2& b = v_[(i + 1) % n];
        twice += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * std::abs(twice);
}

bool ConvexPolygon::contains(const Vec2& p, double slack) const {
    const std::size_t n = v_.size();
    if (n == 0) return false;
    if (n == 1) return (p - v_[0]).norm() <= slack;
    if (n == 2) return segment_distance(p, v_[0], v_[1]) <= slack;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v_[i];
        const Vec2& b = v_[(i + 1) % n];
        Vec2 edge = b - a;
        double len = edge.norm();
        // signed distance to the edge line, positive on the interior side
        double d = (edge.x() * (p.y() - a.y()) - edge.y() * (p.x() - a.x())) / len;
        if (d < -slack) return false;
    }
    return true;
}

double ConvexPolygon::distance(const Vec2& p) const {
    const std::size_t n = v_.size();
    if (n == 0) return std::numeric_limits<double>::infinity();
    if (n == 1) return (p - v_[0]).norm();
    if (contains(p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, segment_distance(p, v_[i], v_[(i + 1) % n]));
    return best;
}

}  // namespace pentabend
