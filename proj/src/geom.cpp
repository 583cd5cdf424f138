#include "bpst/geom.hpp"

#include <algorithm>
#include <cmath>

namespace bpst {

double distance(Point2 a, Point2 b) {
  return std::sqrt(static_cast<double>(distance2(a, b)));
}

bool on_segment(Point2 a, Point2 b, Point2 c) {
  if (cross(a, b, c) != 0) return false;
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

namespace {

bool is_endpoint(const Segment& s, Point2 p) { return s.a == p || s.b == p; }

// Collinear segments: overlap length along the dominant axis.
Wide collinear_overlap(const Segment& s1, const Segment& s2) {
  const bool use_x = s1.a.x != s1.b.x || s2.a.x != s2.b.x;
  auto lo = [&](const Segment& s) { return use_x ? std::min(s.a.x, s.b.x) : std::min(s.a.y, s.b.y); };
  auto hi = [&](const Segment& s) { return use_x ? std::max(s.a.x, s.b.x) : std::max(s.a.y, s.b.y); };
  return static_cast<Wide>(std::min(hi(s1), hi(s2))) - std::max(lo(s1), lo(s2));
}

}  // namespace

bool segments_properly_cross(const Segment& s1, const Segment& s2) {
  const int o1 = sign(cross(s1.a, s1.b, s2.a));
  const int o2 = sign(cross(s1.a, s1.b, s2.b));
  const int o3 = sign(cross(s2.a, s2.b, s1.a));
  const int o4 = sign(cross(s2.a, s2.b, s1.b));

  if (o1 == 0 && o2 == 0) {
    // Touching at a single point of collinear segments happens only at an
    // endpoint of both, i.e. a shared endpoint.
    return collinear_overlap(s1, s2) > 0;
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;

  // Touching configurations: an endpoint of one lies on the other.
  if (o1 == 0 && on_segment(s1.a, s1.b, s2.a) && !is_endpoint(s1, s2.a)) return true;
  if (o2 == 0 && on_segment(s1.a, s1.b, s2.b) && !is_endpoint(s1, s2.b)) return true;
  if (o3 == 0 && on_segment(s2.a, s2.b, s1.a) && !is_endpoint(s2, s1.a)) return true;
  if (o4 == 0 && on_segment(s2.a, s2.b, s1.b) && !is_endpoint(s2, s1.b)) return true;
  return false;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const int o1 = sign(cross(s1.a, s1.b, s2.a));
  const int o2 = sign(cross(s1.a, s1.b, s2.b));
  const int o3 = sign(cross(s2.a, s2.b, s1.a));
  const int o4 = sign(cross(s2.a, s2.b, s1.b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(s1.a, s1.b, s2.a)) || (o2 == 0 && on_segment(s1.a, s1.b, s2.b)) ||
         (o3 == 0 && on_segment(s2.a, s2.b, s1.a)) || (o4 == 0 && on_segment(s2.a, s2.b, s1.b));
}

bool segment_meets_triangle_interior(const Segment& s, Point2 a, Point2 b, Point2 c) {
  Wide area = cross(a, b, c);
  if (area == 0) return false;
  if (area < 0) std::swap(b, c);

  // Clip the parameter interval [0, 1] against the three open half-planes
  // cross(edge, point(t)) > 0, where cross is affine in t.
  Fraction lo{0, 1};
  Fraction hi{1, 1};
  bool lo_open = false;
  bool hi_open = false;
  const Point2 tri[3] = {a, b, c};
  for (int k = 0; k < 3; ++k) {
    const Point2 u = tri[k];
    const Point2 v = tri[(k + 1) % 3];
    const Wide f0 = cross(u, v, s.a);
    const Wide f1 = cross(u, v, s.b);
    if (f0 <= 0 && f1 <= 0) return false;
    if (f0 > 0 && f1 > 0) continue;
    // Root of f0 + t (f1 - f0) = 0.
    Fraction root{BigInt(-f0), BigInt(f1 - f0)};
    if (root.den < 0) {
      root.num = -root.num;
      root.den = -root.den;
    }
    if (f0 > 0) {
      // Valid for t < root.
      if (root < hi || (root == hi && !hi_open)) {
        hi = root;
        hi_open = true;
      }
    } else {
      if (lo < root || (root == lo && !lo_open)) {
        lo = root;
        lo_open = true;
      }
    }
  }
  if (hi < lo) return false;
  if (lo == hi) return !lo_open && !hi_open;
  return true;
}

bool point_in_closed_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
  const Wide area = cross(a, b, c);
  if (area == 0) {
    return on_segment(a, b, p) || on_segment(b, c, p) || on_segment(a, c, p);
  }
  const int s = sign(area);
  return sign(cross(a, b, p)) * s >= 0 && sign(cross(b, c, p)) * s >= 0 && sign(cross(c, a, p)) * s >= 0;
}

HullResult convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return HullResult{pts};

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const Point2& p = pts[i];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return HullResult{hull};
}

Region point_in_convex_region(Point2 p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  bool boundary = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Wide c = cross(v[i], v[(i + 1) % v.size()], p);
    if (c < 0) return Region::Outside;
    if (c == 0) boundary = true;
  }
  return boundary ? Region::OnBoundary : Region::Inside;
}

bool point_in_hull(Point2 p, const HullResult& hull) {
  const auto& v = hull.vertices;
  if (v.empty()) return false;
  if (v.size() == 1) return p == v[0];
  if (v.size() == 2) return on_segment(v[0], v[1], p);
  return point_in_convex_region(p, hull.polygon()) != Region::Outside;
}

bool is_convex_ccw(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == v[(i + 1) % v.size()]) return false;
    if (cross(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) < 0) return false;
  }
  return true;
}

int compare_angle(Point2 u, Point2 v) {
  // Upper half (including the positive x axis) sorts before the lower half.
  auto half = [](Point2 d) { return (d.y < 0 || (d.y == 0 && d.x < 0)) ? 1 : 0; };
  const int hu = half(u);
  const int hv = half(v);
  if (hu != hv) return hu < hv ? -1 : 1;
  const Wide c = cross(Point2{0, 0}, u, v);
  if (c > 0) return -1;
  if (c < 0) return 1;
  return 0;
}

}  // namespace bpst
