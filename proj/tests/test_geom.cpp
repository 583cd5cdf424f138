#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bpst/geom.hpp"
#include "bpst/instance.hpp"
#include "oracles.hpp"

using namespace bpst;

namespace {

Point2 random_point(std::mt19937_64& rng, Coord range) {
  std::uniform_int_distribution<Coord> d(-range, range);
  return {d(rng), d(rng)};
}

}  // namespace

TEST(Orientation, MatchesRationalOnRandomAndNearCollinearDecimals) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> big(-999'999'999'999, 999'999'999'999);
  auto decimal_text = [](std::int64_t micro) {
    const bool neg = micro < 0;
    const std::uint64_t m = neg ? static_cast<std::uint64_t>(-micro) : static_cast<std::uint64_t>(micro);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%llu.%06llu", neg ? "-" : "", static_cast<unsigned long long>(m / 1000000),
                  static_cast<unsigned long long>(m % 1000000));
    return std::string(buf);
  };
  int collinear = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    std::int64_t v[6];
    for (auto& x : v) x = big(rng);
    if (trial % 2 == 1) {
      // Third point on the line through the first two, nudged by at most one
      // micro-unit, so the triple is collinear to within 1e-12 relative.
      const std::int64_t k = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
      const std::int64_t dx = (v[2] - v[0]) / 4;
      const std::int64_t dy = (v[3] - v[1]) / 4;
      v[2] = v[0] + 4 * dx;
      v[3] = v[1] + 4 * dy;
      v[4] = v[0] + k * dx;
      v[5] = v[1] + k * dy;
      v[4] += std::uniform_int_distribution<int>(-1, 1)(rng);
      v[5] += std::uniform_int_distribution<int>(-1, 1)(rng);
      for (auto& x : v) x = std::clamp<std::int64_t>(x, -999'999'999'999, 999'999'999'999);
    }
    std::string text[6];
    for (int i = 0; i < 6; ++i) text[i] = decimal_text(v[i]);
    const Point2 a{parse_coord(text[0]), parse_coord(text[1])};
    const Point2 b{parse_coord(text[2]), parse_coord(text[3])};
    const Point2 c{parse_coord(text[4]), parse_coord(text[5])};
    const oracle::RPoint ra{oracle::decimal(text[0]), oracle::decimal(text[1])};
    const oracle::RPoint rb{oracle::decimal(text[2]), oracle::decimal(text[3])};
    const oracle::RPoint rc{oracle::decimal(text[4]), oracle::decimal(text[5])};
    const int ref = oracle::orientation(ra, rb, rc);
    if (ref == 0) ++collinear;
    ASSERT_EQ(static_cast<int>(orientation(a, b, c)), ref) << text[0] << " " << text[1] << " / " << text[2] << " "
                                                           << text[3] << " / " << text[4] << " " << text[5];
  }
  EXPECT_GT(collinear, 100);
}

TEST(SegmentsProperlyCross, MatchesIntersectionParameterReference) {
  std::mt19937_64 rng(5);
  int crossings = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    // A tiny coordinate range makes shared endpoints, touching and collinear
    // overlap common.
    Point2 p[4];
    for (auto& q : p) q = random_point(rng, 3);
    if (p[0] == p[1] || p[2] == p[3]) continue;
    const bool ref = oracle::properly_cross(p[0], p[1], p[2], p[3]);
    crossings += ref;
    ASSERT_EQ(segments_properly_cross({p[0], p[1]}, {p[2], p[3]}), ref)
        << p[0].x << "," << p[0].y << " " << p[1].x << "," << p[1].y << " | " << p[2].x << "," << p[2].y << " "
        << p[3].x << "," << p[3].y;
    const bool shared = p[0] == p[2] || p[0] == p[3] || p[1] == p[2] || p[1] == p[3];
    EXPECT_EQ(segments_intersect({p[0], p[1]}, {p[2], p[3]}), ref || shared);
  }
  EXPECT_GT(crossings, 1000);
}

TEST(SegmentsProperlyCross, NamedCases) {
  EXPECT_TRUE(segments_properly_cross({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {2, 2}}, {{2, 2}, {4, 0}}));   // common endpoint
  EXPECT_TRUE(segments_properly_cross({{0, 0}, {4, 0}}, {{2, 0}, {2, 3}}));    // T junction
  EXPECT_TRUE(segments_properly_cross({{0, 0}, {4, 0}}, {{2, 0}, {6, 0}}));    // collinear overlap
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {2, 0}}, {{2, 0}, {6, 0}}));   // collinear, touching ends
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {1, 0}}, {{2, 0}, {6, 0}}));   // collinear, apart
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {4, 0}}, {{0, 1}, {4, 1}}));   // parallel
}

TEST(TrianglePredicates, MatchRationalReference) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20000; ++trial) {
    Point2 s0 = random_point(rng, 4), s1 = random_point(rng, 4);
    Point2 a = random_point(rng, 4), b = random_point(rng, 4), c = random_point(rng, 4);
    if (s0 == s1) continue;
    ASSERT_EQ(segment_meets_triangle_interior({s0, s1}, a, b, c), oracle::meets_open_triangle(s0, s1, a, b, c))
        << trial;
  }
  EXPECT_TRUE(point_in_closed_triangle({1, 1}, {0, 0}, {4, 0}, {0, 4}));
  EXPECT_TRUE(point_in_closed_triangle({2, 2}, {0, 0}, {4, 0}, {0, 4}));
  EXPECT_FALSE(point_in_closed_triangle({3, 3}, {0, 0}, {4, 0}, {0, 4}));
  EXPECT_TRUE(point_in_closed_triangle({1, 1}, {0, 0}, {0, 4}, {4, 0}));
}

TEST(ConvexHull, VerticesAreTheExtremePoints) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 14);
    std::vector<Point2> pts;
    const Coord range = trial % 3 == 0 ? 3 : 1000;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, range));
    const HullResult hull = convex_hull(pts);
    std::vector<Point2> got = hull.vertices;
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, oracle::extreme_points(pts)) << trial;
    if (hull.is_polygon()) {
      EXPECT_TRUE(is_convex_ccw(hull.polygon()));
    }
    for (const Point2& p : pts) EXPECT_TRUE(point_in_hull(p, hull));
  }
}

TEST(ConvexHull, RegionClassification) {
  const ConvexPolygon sq{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}};
  EXPECT_EQ(point_in_convex_region({2, 2}, sq), Region::Inside);
  EXPECT_EQ(point_in_convex_region({4, 2}, sq), Region::OnBoundary);
  EXPECT_EQ(point_in_convex_region({0, 0}, sq), Region::OnBoundary);
  EXPECT_EQ(point_in_convex_region({5, 2}, sq), Region::Outside);
  EXPECT_FALSE(is_convex_ccw(ConvexPolygon{{{0, 0}, {0, 4}, {4, 4}, {4, 0}}}));
}

TEST(CompareAngle, AgreesWithAtan2OnSeparatedDirections) {
  std::mt19937_64 rng(21);
  auto angle = [](Point2 d) {
    long double a = std::atan2(static_cast<long double>(d.y), static_cast<long double>(d.x));
    return a < 0 ? a + 2 * M_PIl : a;
  };
  for (int trial = 0; trial < 20000; ++trial) {
    const Point2 u = random_point(rng, 1000), v = random_point(rng, 1000);
    if (u == Point2{} || v == Point2{}) continue;
    const long double au = angle(u), av = angle(v);
    if (std::fabs(au - av) < 1e-9L) continue;
    ASSERT_EQ(compare_angle(u, v), au < av ? -1 : 1);
  }
  EXPECT_EQ(compare_angle({2, 3}, {4, 6}), 0);
  EXPECT_EQ(compare_angle({1, 0}, {0, -1}), -1);
  EXPECT_EQ(compare_angle({-1, 0}, {0, -1}), -1);
  EXPECT_EQ(compare_angle({1, -1}, {1, 0}), 1);
}
