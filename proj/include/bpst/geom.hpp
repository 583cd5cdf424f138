#pragma once

// Exact planar predicates over integer coordinates.
//
// Coordinates are fixed-point integers (see instance.hpp for the scale). All
// sign decisions go through 128-bit products; the few predicates that need to
// compare intersection parameters fall back to arbitrary precision.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bpst {

using Coord = std::int64_t;
using Wide = __int128;
using BigInt = boost::multiprecision::cpp_int;

struct Point2 {
  Coord x = 0;
  Coord y = 0;

  friend constexpr auto operator<=>(const Point2&, const Point2&) = default;
  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
};

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

struct Segment {
  Point2 a;
  Point2 b;
};

/// Counterclockwise polygon; consecutive vertices make strictly left turns.
struct ConvexPolygon {
  std::vector<Point2> vertices;
};

enum class Region { Inside, OnBoundary, Outside };

inline Wide cross(Point2 o, Point2 a, Point2 b) {
  return static_cast<Wide>(a.x - o.x) * (b.y - o.y) - static_cast<Wide>(a.y - o.y) * (b.x - o.x);
}

inline Wide dot(Point2 o, Point2 a, Point2 b) {
  return static_cast<Wide>(a.x - o.x) * (b.x - o.x) + static_cast<Wide>(a.y - o.y) * (b.y - o.y);
}

inline int sign(Wide v) { return (v > 0) - (v < 0); }

inline Orientation orientation(Point2 a, Point2 b, Point2 c) {
  return static_cast<Orientation>(sign(cross(a, b, c)));
}

inline Wide distance2(Point2 a, Point2 b) {
  const Wide dx = a.x - b.x;
  const Wide dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Euclidean length in internal units. Display only; compare with distance2.
double distance(Point2 a, Point2 b);

/// True if c lies on the closed segment ab (a != b).
bool on_segment(Point2 a, Point2 b, Point2 c);

/// True iff the two segments share a point that is not a common endpoint.
/// A shared endpoint alone is not a crossing; an endpoint touching the other
/// segment's interior is; collinear overlap of positive length is.
bool segments_properly_cross(const Segment& s1, const Segment& s2);

/// True if the two closed segments share any point.
bool segments_intersect(const Segment& s1, const Segment& s2);

/// True if the segment meets the open interior of triangle abc. Degenerate
/// (collinear) triangles have no interior.
bool segment_meets_triangle_interior(const Segment& s, Point2 a, Point2 b, Point2 c);

/// Strictly inside or on the boundary of the closed triangle abc (any
/// orientation). For a degenerate triangle this is membership in its hull.
bool point_in_closed_triangle(Point2 p, Point2 a, Point2 b, Point2 c);

/// Counterclockwise hull with collinear boundary points removed. Fewer than
/// three vertices means the input was degenerate (a point or a segment, given
/// by its extreme points).
struct HullResult {
  std::vector<Point2> vertices;

  bool is_polygon() const { return vertices.size() >= 3; }
  ConvexPolygon polygon() const { return ConvexPolygon{vertices}; }
};

HullResult convex_hull(std::span<const Point2> points);

Region point_in_convex_region(Point2 p, const ConvexPolygon& poly);

/// Closed membership in a hull, including the degenerate point/segment forms.
bool point_in_hull(Point2 p, const HullResult& hull);

bool is_convex_ccw(const ConvexPolygon& poly);

/// Compares the angle of direction u against v around the origin, measured
/// counterclockwise from the positive x axis in [0, 2pi). Exact.
int compare_angle(Point2 u, Point2 v);

/// Exact fraction over arbitrary precision integers, denominator positive.
struct Fraction {
  BigInt num;
  BigInt den{1};

  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
};

}  // namespace bpst
